#include "grayforge/quadrature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace grayforge {

GaussLegendre::GaussLegendre(int n) : x_(static_cast<std::size_t>(n)), w_(static_cast<std::size_t>(n)) {
    if (n < 2) throw std::invalid_argument("GaussLegendre: n >= 2 required");
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // initial guess for the i-th root of P_n, then Newton on the recurrence
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double dz = -p1 / pp;
            z += dz;
            if (std::abs(dz) < std::numeric_limits<double>::epsilon()) break;
        }
        x_[static_cast<std::size_t>(i)] = -z;
        x_[static_cast<std::size_t>(n - 1 - i)] = z;
        double w = 2.0 / ((1.0 - z * z) * pp * pp);
        w_[static_cast<std::size_t>(i)] = w;
        w_[static_cast<std::size_t>(n - 1 - i)] = w;
    }
}

double GaussLegendre::integrate(const std::function<double(double)>& f, double a, double b) const {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < x_.size(); ++i) acc += w_[i] * f(mid + half * x_[i]);
    return acc * half;
}

double GaussLegendre::integrate_composite(const std::function<double(double)>& f, double a,
                                          double b, int panels) const {
    double acc = 0.0;
    for (int k = 0; k < panels; ++k) {
        double pa = a + (b - a) * static_cast<double>(k) / panels;
        double pb = a + (b - a) * static_cast<double>(k + 1) / panels;
        acc += integrate(f, pa, pb);
    }
    return acc;
}

const GaussLegendre& default_gauss_rule() {
    static const GaussLegendre rule(48);
    return rule;
}

namespace {

// Integrand 2/sqrt(Q(root +/- u^2)/u^2) after the u^2 substitution at a simple
// root; the ratio has a removable singularity at u = 0 and Gauss nodes never
// evaluate there.
double desingularized_half(const std::function<double(double)>& Q, double root, double inner,
                           int panels) {
    const double span = inner - root;  // signed: positive if integrating to the right
    const double u_max = std::sqrt(std::abs(span));
    const double dir = span >= 0.0 ? 1.0 : -1.0;
    auto f = [&](double u) {
        const double t = root + dir * u * u;
        const double q = Q(t);
        const double ratio = q / (u * u);
        if (!(ratio > 0.0)) throw std::domain_error("period_integral: rate function not positive inside interval");
        return 2.0 / std::sqrt(ratio);
    };
    return default_gauss_rule().integrate_composite(f, 0.0, u_max, panels);
}

}  // namespace

double period_integral(const std::function<double(double)>& Q, double lo, double hi,
                       bool lo_is_root, bool hi_is_root, int panels) {
    if (!(hi > lo)) throw std::invalid_argument("period_integral: hi must exceed lo");
    auto direct = [&](double t) {
        const double q = Q(t);
        if (!(q > 0.0)) throw std::domain_error("period_integral: rate function not positive inside interval");
        return 1.0 / std::sqrt(q);
    };
    const double mid = 0.5 * (lo + hi);
    double acc = 0.0;
    if (lo_is_root)
        acc += desingularized_half(Q, lo, mid, panels);
    else
        acc += default_gauss_rule().integrate_composite(direct, lo, mid, panels);
    if (hi_is_root)
        acc += desingularized_half(Q, hi, mid, panels);
    else
        acc += default_gauss_rule().integrate_composite(direct, mid, hi, panels);
    return acc;
}

}  // namespace grayforge
