// Discrete/derived parameters shared by every metric family: genus and Chern
// number of the ruled surface, base curvature K, the fiber scale s, the
// normalization branch A and the sign eps.
#pragma once

#include <stdexcept>
#include <string>

namespace grayforge {

/// Exact rational, kept alongside the floating value of s so that the sharp
/// threshold comparisons (s < 2, s < eta) are exact where possible.
struct Rational {
    long long num = 0;
    long long den = 1;  // > 0, reduced

    static Rational of(long long n, long long d);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    // comparison against an integer bound, exact
    bool less_than(long long bound) const { return num < bound * den; }
    bool at_least(long long bound) const { return num >= bound * den; }
};

struct FamilyParams {
    int genus = 0;
    int chern_k = 0;
    double K = 0.0;       // base curvature, one of {-4, 0, 4}
    Rational s_exact;     // 2k/|chi| for genus != 1, k for genus = 1
    double s = 0.0;
    int A = -1;           // normalization branch in {-1, 0, 1}
    int eps = 0;          // -sgn(K*A)
    int euler_chi = 2;    // 2 - 2*genus
};

/// Derive the full parameter block from (genus, chern_k, A). Throws
/// std::invalid_argument on out-of-range inputs.
FamilyParams derive_params(int genus, int chern_k, int A);

/// Validation used by the families that need a fiber (s > 0): rejects k = 0.
void require_positive_s(const FamilyParams& p, const std::string& family);

}  // namespace grayforge
