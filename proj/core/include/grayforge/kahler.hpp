// Kahler branch (A = 0): f = g g'/s with squared slope
//   P(g) = -(D/8) g^4 - (C/6) g^2 + E/g^4 - K/4,   C = 0, K = -4,
// endpoints y = (2(2-s)/D)^(1/4), x = (2(2+s)/D)^(1/4), E = (s^2-4)/(2D).
// Solutions exist exactly for s in (0, 2).
#pragma once

#include <functional>

#include "grayforge/profile.hpp"
#include "grayforge/report.hpp"

namespace grayforge {

struct KahlerSpec {
    double s = 0.0;
    double D = 0.0;
    double C = 0.0;
    double E = 0.0;
    double y = 0.0, x = 0.0;
    double K = -4.0;
};

/// Validated constructor; refuses s outside (0, 2) and D <= 0.
KahlerSpec make_kahler_spec(double s, double D);

/// The closed-form squared slope P(g) and its derivative.
std::function<double(double)> kahler_p(const KahlerSpec& spec);
std::function<double(double)> kahler_p_derivative(const KahlerSpec& spec);

/// Residuals of the boundary system: P(y), P(x), y P'(y)/2 - s, x P'(x)/2 + s,
/// the root structure of P g^4 in u = g^2, and positivity on (y, x).
VerificationReport kahler_boundary_residuals(const KahlerSpec& spec);

/// End-to-end profile: integrate g'' = P'(g)/2 between the endpoints,
/// set f = g g'/s.
MetricProfile kahler_profile(const KahlerSpec& spec);

}  // namespace grayforge
