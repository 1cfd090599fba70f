// Coefficient algebra of the bi-Hermitian construction: the squared-slope
// profile z0(t) = P(t)/(1 - t^2), the linear solves for its coefficients
// (C, D, E) from the endpoint conditions z0 = 0, z0' = -/+ 2s, the pair
// compatibility equation, and the positivity thresholds.
#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "grayforge/polynomial.hpp"

namespace grayforge {

/// Raised when a closed-form denominator degenerates (x near 0, +-1, ...).
class DegenerateParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The coefficient triple (C, D, E) in both scales. The construction's ODE is
/// first solved with "raw" coefficients and then renamed to the normalized
/// scale C = C_raw s^2, D = D_raw s^4, E = E_raw / s in which every closed
/// form below is written; the eigenvalue relation mu = D_raw g^2 - C_raw
/// needs the raw scale back. Both are stored to keep the conversion one-way
/// and explicit.
struct Coefficients {
    double C_norm = 0.0, D_norm = 0.0, E_norm = 0.0;
    double C_raw = 0.0, D_raw = 0.0, E_raw = 0.0;
    double s = 1.0;

    static Coefficients from_normalized(double C, double D, double E, double s);
    static Coefficients from_raw(double C, double D, double E, double s);
};

enum class PolyProvenance { DirectCoefficients, EndpointSolve, SymmetricClosedForm, EinsteinBranch };

/// Numerator polynomial P of the squared slope, z0(t) = P(t) / (1 - t^2).
struct ProfilePolynomial {
    Polynomial P;
    int eps = 0;
    PolyProvenance provenance = PolyProvenance::DirectCoefficients;

    double z0(double t) const;
    std::function<double(double)> z0_function() const;
    std::function<double(double)> z0_derivative_function() const;
};

/// Endpoint pair y < x for the boundary conditions; branch -1 keeps both in
/// (-1, 1), branch +1 both in (1, inf).
struct BoundaryPair {
    double x = 0.0;
    double y = 0.0;
    int branch = -1;

    void validate() const;
};

/// z0(t) evaluated directly from its expanded rational form (normalized
/// coefficients). Rejects t = +-1.
double z0_eval(const Coefficients& coeffs, int eps, double t);

/// Coefficients of P(t) = -4 eps t^2 - (D/5) t^6 + (D - C/3) t^4
///                        + (2C - 3D) t^2 + E t - 4 eps + C - D.
ProfilePolynomial p_poly(const Coefficients& coeffs, int eps);

/// Closed forms for (D, C) from the x-endpoint conditions z0(x) = 0,
/// z0'(x) = -2s at given E. Returns normalized-scale values.
struct SolvedCD {
    double C_norm = 0.0;
    double D_norm = 0.0;
};
SolvedCD solve_CD(double x, double E, double s, int eps);

/// Solve all four endpoint conditions for (C, D, E): three linearly, the
/// fourth (z0'(y) = 2s) is the feasibility residual. Returns nullopt when the
/// residual exceeds 1e-8 * max(1, |coefficients|); throws SingularSystemError
/// for a rank-deficient system.
std::optional<Coefficients> solve_CDE_pair(const BoundaryPair& pair, double s, int eps);

/// Residual of the fourth endpoint condition for a candidate pair, in the
/// normalization used by solve_CDE_pair (for reporting).
double pair_residual(const BoundaryPair& pair, double s, int eps);

/// Left-hand side (x + y) * G(x, y) of the pair compatibility equation.
double compatibility_lhs(double x, double y, double s, int eps);

/// The factor G itself.
double g_function(double x, double y, double s, int eps);

/// Analytic partial derivatives (G_x, G_y).
struct GPartials {
    double Gx = 0.0;
    double Gy = 0.0;
};
GPartials g_partials(double x, double y, double s, int eps);

/// Closed-form even numerator polynomial for the symmetric pair y = -x.
ProfilePolynomial symmetric_p(double x, double s, int eps);

/// Supremum of admissible symmetric endpoints: for eps = -1 and s < 2 the
/// first positive root of -4x^3(x^2 - 5) + s(-15 + 10x^2 - 3x^4); otherwise 1.
double eps_s(double s, int eps);

/// True iff z0 > 0 on the open interval (y, x); endpoints must be simple
/// roots of P.
bool positivity_check(const ProfilePolynomial& poly, const BoundaryPair& pair);

/// One feasible asymmetric endpoint pair (x != -y) at the given s, eps = -1,
/// if any: a point of {G = 0} within (-1, 1)^2 passing the positivity check.
std::optional<BoundaryPair> find_asymmetric_pair(double s, double x_hint = 0.0);

struct EtaEstimate {
    double value = 0.0;  // midpoint of the bracket
    double lo = 0.0;
    double hi = 0.0;
    bool converged = false;
};

/// Numeric supremum of s admitting an asymmetric solution (eps = -1):
/// bisection over s against an inner 2-D search on {G = 0} with the
/// positivity filter. The threshold lies in [2.0, 2.1].
EtaEstimate eta_estimate(double tol = 1e-5);

}  // namespace grayforge
