#include "grayforge/kahler.hpp"

#include <cmath>
#include <stdexcept>

#include "grayforge/polynomial.hpp"

namespace grayforge {

KahlerSpec make_kahler_spec(double s, double D) {
    if (!(s > 0.0 && s < 2.0))
        throw std::invalid_argument("kahler: solutions exist iff s in (0, 2)");
    if (!(D > 0.0)) throw std::invalid_argument("kahler: D > 0 required");
    KahlerSpec spec;
    spec.s = s;
    spec.D = D;
    spec.C = 0.0;
    spec.K = -4.0;
    spec.E = (s * s - 4.0) / (2.0 * D);
    spec.y = std::pow(2.0 * (2.0 - s) / D, 0.25);
    spec.x = std::pow(2.0 * (2.0 + s) / D, 0.25);
    return spec;
}

std::function<double(double)> kahler_p(const KahlerSpec& spec) {
    const double D = spec.D, C = spec.C, E = spec.E, K = spec.K;
    return [D, C, E, K](double g) {
        if (!(g > 0.0)) throw std::domain_error("kahler P: g > 0 required");
        const double g2 = g * g, g4 = g2 * g2;
        return -D / 8.0 * g4 - C / 6.0 * g2 + E / g4 - K / 4.0;
    };
}

std::function<double(double)> kahler_p_derivative(const KahlerSpec& spec) {
    const double D = spec.D, C = spec.C, E = spec.E;
    return [D, C, E](double g) {
        if (!(g > 0.0)) throw std::domain_error("kahler P': g > 0 required");
        const double g2 = g * g, g3 = g2 * g, g5 = g3 * g2;
        return -D / 2.0 * g3 - C / 3.0 * g - 4.0 * E / g5;
    };
}

VerificationReport kahler_boundary_residuals(const KahlerSpec& spec) {
    VerificationReport report("kahler-boundary");
    auto P = kahler_p(spec);
    auto dP = kahler_p_derivative(spec);
    const double y = spec.y, x = spec.x, s = spec.s;

    report.add("P(y)", P(y), 1e-12);
    report.add("P(x)", P(x), 1e-12);
    report.add("y P'(y)/2 - s", 0.5 * y * dP(y) - s, 1e-12);
    report.add("x P'(x)/2 + s", 0.5 * x * dP(x) + s, 1e-12);
    report.add("(s+2) y^4 + (s-2) x^4", (s + 2.0) * std::pow(y, 4) + (s - 2.0) * std::pow(x, 4),
               1e-12);
    report.add_flag("E < 0", spec.E < 0.0);

    // Root structure via the polynomial g^4 P(g) in u = g^2:
    // -(D/8) u^4 - (C/6) u^3 - (K/4) u^2 + E, expected roots exactly {y^2, x^2}.
    Polynomial pu({spec.E, 0.0, -spec.K / 4.0, -spec.C / 6.0, -spec.D / 8.0});
    auto roots = isolate_roots(pu, 1e-9, 4.0 * x * x);
    bool roots_ok = roots.size() == 2 && std::abs(roots[0] - y * y) < 1e-8 * std::max(1.0, y * y) &&
                    std::abs(roots[1] - x * x) < 1e-8 * std::max(1.0, x * x);
    report.add_flag("two positive roots {y, x}", roots_ok);

    double min_p = 1e300;
    for (int i = 1; i < 256; ++i) {
        double g = y + (x - y) * i / 256.0;
        min_p = std::min(min_p, P(g));
    }
    report.add_flag("P > 0 on (y, x)", min_p > 0.0);
    return report;
}

MetricProfile kahler_profile(const KahlerSpec& spec) {
    VerificationReport boundary = kahler_boundary_residuals(spec);
    if (!boundary.passed())
        throw std::domain_error("kahler_profile: boundary/positivity certificate failed");

    TurningPointProblem problem;
    problem.Q = kahler_p(spec);
    problem.dQ = kahler_p_derivative(spec);
    problem.x0 = spec.y;
    problem.x1 = spec.x;
    PeriodicSolution sol = integrate_turning_ivp(problem);

    ProfileRecipe recipe;
    recipe.Q = problem.Q;
    recipe.dQ = problem.dQ;
    recipe.h_lo = spec.y;
    recipe.h_hi = spec.x;
    recipe.g_rule = GRule::Identity;
    recipe.f_rule = FRule::HTimesDhOverS;
    recipe.s = spec.s;
    recipe.K = spec.K;
    recipe.valid = true;

    MetricProfile profile = assemble_profile(sol, recipe, "kahler");
    profile.block = KahlerBlock{spec.s, spec.D, spec.C, spec.E, spec.y, spec.x};
    return profile;
}

}  // namespace grayforge
