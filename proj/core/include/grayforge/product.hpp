// Product family (k = 0) on CP^1 x Sigma: squared slope
//   P(g) = A/g + B g^4 + C g^2 + 4
// with endpoints y = 4(alpha-1)(alpha^2+3alpha+1)/(alpha(2alpha^2+alpha+2)),
// x = alpha y, and closed-form Ricci eigenvalues
//   lambda = -10 B h^2 - 3C,   mu = -5 B h^2 - 3C.
#pragma once

#include <utility>

#include "grayforge/profile.hpp"
#include "grayforge/report.hpp"

namespace grayforge {

struct ProductSpec {
    double alpha = 0.0;
    double y = 0.0, x = 0.0;
    double A3 = 0.0, B3 = 0.0, C3 = 0.0;  // suffixed: distinct from the branch/coefficient symbols
    double residual4 = 0.0;               // |P'(x) + 2| of the overdetermined solve
    double K = -4.0;
    double s = 0.0;
};

/// Closed-form endpoints; requires alpha > 1 (degenerate as alpha -> 1+).
std::pair<double, double> product_endpoints(double alpha);

struct ProductCoefficients {
    double A3 = 0.0, B3 = 0.0, C3 = 0.0;
    double residual4 = 0.0;  // fourth condition P'(x) = -2, consistency certificate
};

/// Solve P(y) = 0, P(x) = 0, P'(y) = 2 linearly and evaluate P'(x) + 2.
ProductCoefficients product_solve_coeffs(double y, double x);

/// Validated constructor: endpoints from alpha, coefficient solve, and the
/// fourth-condition consistency check.
ProductSpec make_product_spec(double alpha);

/// End-to-end profile: g = h integrated between the endpoints, f = g'.
MetricProfile product_profile(const ProductSpec& spec);

/// Closed-form eigenvalue pair (lambda, mu) at fiber coordinate h.
std::pair<double, double> product_eigenvalues(const ProductSpec& spec, double h);

}  // namespace grayforge
