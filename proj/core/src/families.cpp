#include "grayforge/families.hpp"

#include <cmath>
#include <stdexcept>

#include "grayforge/gray_solver.hpp"
#include "grayforge/turning_point.hpp"

namespace grayforge {

namespace {

MetricProfile finish_gray_profile(const Coefficients& coeffs, const BoundaryPair& pair,
                                  const FamilyParams& params, const std::string& tag) {
    ProfilePolynomial poly = p_poly(coeffs, params.eps);
    poly.provenance = PolyProvenance::EndpointSolve;
    if (!positivity_check(poly, pair))
        throw std::domain_error(tag + ": positivity certificate failed on (y, x)");

    auto z0 = poly.z0_function();
    auto dz0 = poly.z0_derivative_function();
    const double s = params.s;
    TurningPointProblem problem;
    problem.Q = [z0, s](double h) { return z0(h / s); };
    problem.dQ = [dz0, s](double h) { return dz0(h / s) / s; };
    problem.x0 = s * pair.y;
    problem.x1 = s * pair.x;
    PeriodicSolution sol = integrate_turning_ivp(problem);

    MetricProfile profile = build_profile(sol, s, pair.branch, params.K);
    profile.family_tag = tag;
    profile.params = params;
    profile.block = GrayBlock{coeffs, pair.x, pair.y, params.eps, pair.branch};
    return profile;
}

}  // namespace

MetricProfile gray_symmetric_profile(int genus, int k, double x) {
    FamilyParams params = derive_params(genus, k, -1);
    require_positive_s(params, "gray-symmetric");
    const double bound = eps_s(params.s, params.eps);
    if (!(x > 0.0 && x < bound))
        throw std::invalid_argument("gray-symmetric: x must lie in (0, eps_s) = (0, " +
                                    std::to_string(bound) + ")");
    SolvedCD cd = solve_CD(x, 0.0, params.s, params.eps);
    Coefficients coeffs = Coefficients::from_normalized(cd.C_norm, cd.D_norm, 0.0, params.s);
    return finish_gray_profile(coeffs, BoundaryPair{x, -x, -1}, params, "gray-symmetric");
}

MetricProfile gray_asymmetric_profile(int genus, int k, double x, std::optional<double> y_opt) {
    FamilyParams params = derive_params(genus, k, -1);
    require_positive_s(params, "gray-asymmetric");
    if (params.eps != -1)
        throw std::invalid_argument("gray-asymmetric: requires genus >= 2 (eps = -1)");

    BoundaryPair pair{x, 0.0, -1};
    if (y_opt) {
        pair.y = *y_opt;
    } else {
        // y on the zero set of the compatibility factor at this x
        auto root = first_sign_change(
            [&](double y) { return g_function(x, y, params.s, params.eps); }, -0.985, x - 1e-5,
            4096);
        if (!root) throw std::invalid_argument("gray-asymmetric: no compatible y for this x");
        pair.y = *root;
    }
    pair.validate();
    if (std::abs(pair.x + pair.y) < 1e-6)
        throw std::invalid_argument("gray-asymmetric: pair is symmetric (use gray-symmetric)");

    auto coeffs = solve_CDE_pair(pair, params.s, params.eps);
    if (!coeffs)
        throw std::domain_error("gray-asymmetric: endpoint pair fails the compatibility residual");
    return finish_gray_profile(*coeffs, pair, params, "gray-asymmetric");
}

}  // namespace grayforge
