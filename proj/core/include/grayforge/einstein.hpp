// Einstein branch: endpoints where the coefficient D vanishes. The defining
// quartic Q(x) = -6s - 24 eps x - 12 s x^2 - 8 eps x^3 + 2 s x^4 has exactly
// one root in (0, 1) iff eps = -1 and s in (0, 2); with s = k/(genus - 1)
// this enumerates k in {1, ..., 2 genus - 3}.
#pragma once

#include <optional>
#include <vector>

#include "grayforge/family_params.hpp"
#include "grayforge/gray_solver.hpp"
#include "grayforge/polynomial.hpp"
#include "grayforge/profile.hpp"

namespace grayforge {

struct EinsteinSpec {
    int genus = 2;
    int k = 1;
    Rational s_exact;
    double s = 0.0;
    int eps = -1;
    double x_star = 0.0;       // the unique quartic root in (0, 1)
    Coefficients coeffs;       // D_norm = E_norm = 0 exactly
    double d_residual = 0.0;   // |D| left over by the closed-form solve at x_star
};

/// The closed-form coefficient D as a function of the endpoint (E = 0).
double d_at(double x, double s, int eps);

/// The quartic whose (0,1)-root marks the Einstein endpoint.
Polynomial q_poly(double s, int eps);

/// Unique root of Q'' in (0, 1) for eps = -1: s / (sqrt(1 + s^2) + 1).
double alpha_s(double s);

/// Root of the quartic in (0, 1): present iff eps = -1 and s in (0, 2).
std::optional<double> q_root(double s, int eps);

/// All Einstein members on genus >= 2: k = 1, ..., 2 genus - 3.
std::vector<EinsteinSpec> enumerate_einstein(int genus);

/// Spec for one (genus, k); throws std::invalid_argument when s >= 2 (no root).
EinsteinSpec einstein_spec(int genus, int k);

/// End-to-end construction: even quartic numerator, positivity, integration.
MetricProfile einstein_profile(const EinsteinSpec& spec);

}  // namespace grayforge
