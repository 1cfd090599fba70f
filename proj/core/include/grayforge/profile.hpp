// Metric profiles: the sampled warping functions (f, g) on [-a, a], their
// assembly from a turning-point trajectory, a smooth evaluator for
// off-grid queries, and the boundary / parity verification.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "grayforge/family_params.hpp"
#include "grayforge/gray_solver.hpp"
#include "grayforge/turning_point.hpp"
#include "grayforge/report.hpp"

namespace grayforge {

/// How g(t) is obtained from the integrated coordinate h(t).
enum class GRule {
    SqrtS2MinusH2,  // g = sqrt(s^2 - h^2), branch A = -1
    SqrtH2MinusS2,  // g = sqrt(h^2 - s^2), branch A = +1
    Identity,       // h is g itself (Kahler / product constructions)
};

/// How f(t) is obtained.
enum class FRule {
    DhDt,            // f = h'
    HTimesDhOverS,   // f = h h'/s (Kahler branch, f = g g'/s)
};

/// Everything needed to re-evaluate the profile smoothly at arbitrary t:
/// the rate function of h' = sqrt(Q(h)) between its simple roots plus the
/// assembly rules.
struct ProfileRecipe {
    std::function<double(double)> Q;
    std::function<double(double)> dQ;
    double h_lo = 0.0;
    double h_hi = 0.0;
    GRule g_rule = GRule::SqrtS2MinusH2;
    FRule f_rule = FRule::DhDt;
    double s = 1.0;
    double K = -4.0;
    bool valid = false;
};

/// Family-specific coefficient blocks, serialized with the profile.
struct GrayBlock {
    Coefficients coeffs;
    double x = 0.0, y = 0.0;
    int eps = 0;
    int A = -1;
};
struct KahlerBlock {
    double s = 0.0, D = 0.0, C = 0.0, E = 0.0, y = 0.0, x = 0.0;
};
struct ProductBlock {
    double alpha = 0.0, A3 = 0.0, B3 = 0.0, C3 = 0.0, y = 0.0, x = 0.0;
};
using FamilyBlock = std::variant<std::monostate, GrayBlock, KahlerBlock, ProductBlock>;

struct MetricProfile {
    double a = 0.0;  // domain is [-a, a]
    std::vector<double> t_grid, h, f, g;
    double s = 0.0;
    double K = -4.0;
    std::string family_tag;
    std::optional<FamilyParams> params;
    FamilyBlock block;
    ProfileRecipe recipe;

    std::size_t size() const { return t_grid.size(); }
};

/// Smooth evaluation of h, f, g at arbitrary t by inverting the period
/// integral t(h); exact up to quadrature accuracy (~1e-13) and C-infinity in
/// t, which the finite-difference chart engine depends on. Immutable after
/// construction; safe to share between threads.
class ProfileEvaluator {
public:
    explicit ProfileEvaluator(ProfileRecipe recipe);

    double half_domain() const { return a_; }
    double h(double t) const;
    double dh(double t) const;  // = sqrt(Q(h(t)))
    double f(double t) const;
    double g(double t) const;

private:
    struct Half {
        double root = 0.0;
        double dir = 1.0;  // h = root + dir * u^2
        double u_max = 0.0;
        std::vector<double> table_u, table_t;
        std::vector<double> zeta_cheb;  // Chebyshev series of zeta on [0, u_max]
    };
    double zeta_direct(const Half& half, double u) const;  // cancellation-free sampling form
    void build_zeta_series(Half& half) const;
    double zeta(const Half& half, double u) const;  // smooth interpolant
    double arc(const Half& half, double u) const;   // integral 0..u of 2/sqrt(zeta)
    double solve_half(const Half& half, double target_arc) const;

    ProfileRecipe recipe_;
    Half left_, right_;
    double a_ = 0.0;
    double t_mid_ = 0.0;
};

/// Profile assembly from an integrated trajectory. The trajectory descends
/// from h_hi to h_lo; profile time runs the other way so h ascends on [-a, a]
/// with a = l/2.
MetricProfile assemble_profile(const PeriodicSolution& sol, const ProfileRecipe& recipe,
                               std::string family_tag);

/// The branch-A assembly used by the bi-Hermitian families: f = h',
/// g = sqrt(|s^2 - h^2|). Throws std::domain_error when the branch constraint
/// (|h| < s strictly inside for A = -1, h > s for A = +1) is violated.
MetricProfile build_profile(const PeriodicSolution& sol, double s, int A, double K = -4.0);

/// Callbacks for the chart engine; either evaluator-backed or analytic.
struct ProfileFunctions {
    std::function<double(double)> f;
    std::function<double(double)> g;
    double t_min = 0.0, t_max = 0.0;
};
ProfileFunctions profile_functions(const MetricProfile& profile);
std::shared_ptr<const ProfileEvaluator> make_evaluator(const MetricProfile& profile);

/// Endpoint conditions: f(+-a) = 0, f'(-a) = 1, f'(a) = -1, g'(+-a) = 0,
/// g(+-a) != 0. Derivatives are one-sided 4th-order stencils on the grid.
VerificationReport check_boundary(const MetricProfile& profile, double value_tol = 1e-6,
                                  double deriv_tol = 1e-5);

/// Parity structure: h even about each endpoint (checked against a fresh
/// integration from the turning state), f odd / g even there; for profiles
/// claiming midpoint symmetry also h odd about t = 0. The midpoint entry is
/// informational when the family is not symmetric.
VerificationReport check_parity(const MetricProfile& profile, double tol = 1e-6);
VerificationReport check_parity(const MetricProfile& profile, bool expect_midpoint_symmetry,
                                double tol);

}  // namespace grayforge
