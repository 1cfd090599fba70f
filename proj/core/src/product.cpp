#include "grayforge/product.hpp"

#include <cmath>
#include <stdexcept>

#include "grayforge/gray_solver.hpp"
#include "grayforge/linear.hpp"

namespace grayforge {

std::pair<double, double> product_endpoints(double alpha) {
    if (!(alpha > 1.0)) throw std::invalid_argument("product_endpoints: alpha > 1 required");
    const double y = 4.0 * (alpha - 1.0) * (alpha * alpha + 3.0 * alpha + 1.0) /
                     (alpha * (2.0 * alpha * alpha + alpha + 2.0));
    const double x = alpha * y;
    if (!(y > 1e-6))
        throw DegenerateParameterError("product_endpoints: degenerate limit alpha -> 1+ (y -> 0)");
    return {y, x};
}

ProductCoefficients product_solve_coeffs(double y, double x) {
    if (!(0.0 < y && y < x)) throw std::invalid_argument("product_solve_coeffs: 0 < y < x required");
    // unknowns (A, B, C) in P(g) = A/g + B g^4 + C g^2 + 4
    const double y2 = y * y, y3 = y2 * y, y4 = y2 * y2;
    const double x2 = x * x, x4 = x2 * x2;
    std::array<std::array<double, 3>, 3> M{{{1.0 / y, y4, y2},
                                            {1.0 / x, x4, x2},
                                            {-1.0 / y2, 4.0 * y3, 2.0 * y}}};
    std::array<double, 3> rhs{-4.0, -4.0, 2.0};
    auto sol = solve_linear<3>(M, rhs);
    ProductCoefficients out;
    out.A3 = sol[0];
    out.B3 = sol[1];
    out.C3 = sol[2];
    const double dPx = -out.A3 / x2 + 4.0 * out.B3 * x2 * x + 2.0 * out.C3 * x;
    out.residual4 = std::abs(dPx + 2.0);
    return out;
}

ProductSpec make_product_spec(double alpha) {
    auto [y, x] = product_endpoints(alpha);
    ProductCoefficients coeffs = product_solve_coeffs(y, x);
    const double scale = std::max({1.0, std::abs(coeffs.A3), std::abs(coeffs.B3), std::abs(coeffs.C3)});
    if (coeffs.residual4 > 1e-8 * scale)
        throw std::domain_error("make_product_spec: endpoints off the consistency curve (P'(x) != -2)");
    ProductSpec spec;
    spec.alpha = alpha;
    spec.y = y;
    spec.x = x;
    spec.A3 = coeffs.A3;
    spec.B3 = coeffs.B3;
    spec.C3 = coeffs.C3;
    spec.residual4 = coeffs.residual4;
    return spec;
}

MetricProfile product_profile(const ProductSpec& spec) {
    const double A = spec.A3, B = spec.B3, C = spec.C3;
    TurningPointProblem problem;
    problem.Q = [A, B, C](double g) {
        if (!(g > 0.0)) throw std::domain_error("product P: g > 0 required");
        return A / g + B * g * g * g * g + C * g * g + 4.0;
    };
    problem.dQ = [A, B, C](double g) {
        return -A / (g * g) + 4.0 * B * g * g * g + 2.0 * C * g;
    };
    problem.x0 = spec.y;
    problem.x1 = spec.x;
    PeriodicSolution sol = integrate_turning_ivp(problem);

    ProfileRecipe recipe;
    recipe.Q = problem.Q;
    recipe.dQ = problem.dQ;
    recipe.h_lo = spec.y;
    recipe.h_hi = spec.x;
    recipe.g_rule = GRule::Identity;
    recipe.f_rule = FRule::DhDt;
    recipe.s = 0.0;
    recipe.K = spec.K;
    recipe.valid = true;

    MetricProfile profile = assemble_profile(sol, recipe, "product");
    profile.block = ProductBlock{spec.alpha, spec.A3, spec.B3, spec.C3, spec.y, spec.x};
    return profile;
}

std::pair<double, double> product_eigenvalues(const ProductSpec& spec, double h) {
    if (!(h >= spec.y - 1e-12 && h <= spec.x + 1e-12))
        throw std::invalid_argument("product_eigenvalues: h outside [y, x]");
    const double lambda = -10.0 * spec.B3 * h * h - 3.0 * spec.C3;
    const double mu = -5.0 * spec.B3 * h * h - 3.0 * spec.C3;
    return {lambda, mu};
}

}  // namespace grayforge
