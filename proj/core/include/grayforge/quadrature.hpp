// Gauss-Legendre quadrature and the desingularized period integral
// for turning-point problems (simple roots of the rate function).
#pragma once

#include <functional>
#include <vector>

namespace grayforge {

/// Gauss-Legendre rule on [-1, 1]; nodes/weights computed once by Newton
/// iteration on the Legendre recurrence.
class GaussLegendre {
public:
    explicit GaussLegendre(int n);

    /// Integrate f over [a, b] with a single panel.
    double integrate(const std::function<double(double)>& f, double a, double b) const;

    /// Composite rule with `panels` equal panels.
    double integrate_composite(const std::function<double(double)>& f, double a, double b,
                               int panels) const;

    int size() const { return static_cast<int>(x_.size()); }

private:
    std::vector<double> x_, w_;
};

/// Shared rule instance (n = 48), enough for near-machine accuracy on the
/// analytic integrands appearing here.
const GaussLegendre& default_gauss_rule();

/// Integral of 1/sqrt(Q) over [lo, hi]. Endpoints flagged as roots are
/// simple roots of Q and are desingularized by the substitution u^2 = |t - root|,
/// which makes the integrand analytic; the rest is composite Gauss.
/// Q must be positive on the open interval.
double period_integral(const std::function<double(double)>& Q, double lo, double hi,
                       bool lo_is_root, bool hi_is_root, int panels = 4);

}  // namespace grayforge
