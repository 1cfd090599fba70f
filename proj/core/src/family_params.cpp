#include "grayforge/family_params.hpp"

#include <cstdlib>
#include <numeric>

namespace grayforge {

Rational Rational::of(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = std::gcd(std::llabs(n), d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return Rational{n, d};
}

FamilyParams derive_params(int genus, int chern_k, int A) {
    if (genus < 0) throw std::invalid_argument("derive_params: genus must be >= 0");
    if (chern_k < 0) throw std::invalid_argument("derive_params: chern_k must be >= 0");
    if (A < -1 || A > 1) throw std::invalid_argument("derive_params: A must be one of {-1, 0, 1}");

    FamilyParams p;
    p.genus = genus;
    p.chern_k = chern_k;
    p.A = A;
    p.euler_chi = 2 - 2 * genus;

    if (genus == 0)
        p.K = 4.0;
    else if (genus == 1)
        p.K = 0.0;
    else
        p.K = -4.0;

    if (genus == 1) {
        p.s_exact = Rational::of(chern_k, 1);
    } else {
        if (p.euler_chi == 0) throw std::invalid_argument("derive_params: chi = 0 with genus != 1");
        p.s_exact = Rational::of(2LL * chern_k, std::llabs(p.euler_chi));
    }
    p.s = p.s_exact.value();

    const double ka = p.K * static_cast<double>(A);
    p.eps = ka > 0.0 ? -1 : (ka < 0.0 ? 1 : 0);
    return p;
}

void require_positive_s(const FamilyParams& p, const std::string& family) {
    if (p.chern_k == 0 || p.s <= 0.0)
        throw std::invalid_argument(family + ": requires chern_k >= 1 (s > 0); k = 0 is the product family");
}

}  // namespace grayforge
