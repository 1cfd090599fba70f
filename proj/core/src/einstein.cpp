#include "grayforge/einstein.hpp"

#include <cmath>
#include <stdexcept>

namespace grayforge {

double d_at(double x, double s, int eps) {
    const double x2 = x * x, x3 = x2 * x, x4 = x2 * x2;
    const double quartic = 15.0 + 10.0 * x2 - x4;
    const double denom = 2.0 * (x - 1.0) * x * (x + 1.0) * quartic;
    if (std::abs(x) < 1e-9 || std::abs(x2 - 1.0) < 1e-9 || std::abs(quartic) < 1e-9)
        throw DegenerateParameterError("d_at: singular denominator");
    return 5.0 * (-6.0 * s - 24.0 * eps * x - 12.0 * s * x2 - 8.0 * eps * x3 + 2.0 * s * x4) / denom;
}

Polynomial q_poly(double s, int eps) {
    return Polynomial({-6.0 * s, -24.0 * static_cast<double>(eps), -12.0 * s,
                       -8.0 * static_cast<double>(eps), 2.0 * s});
}

double alpha_s(double s) {
    if (!(s > 0.0)) throw std::invalid_argument("alpha_s: s > 0 required");
    return s / (std::sqrt(1.0 + s * s) + 1.0);
}

std::optional<double> q_root(double s, int eps) {
    if (eps != -1) return std::nullopt;
    if (!(s > 0.0) || s >= 2.0) return std::nullopt;
    Polynomial q = q_poly(s, eps);
    Polynomial dq = q.derivative();
    // Q(0) = -6s < 0 and Q(1) = 32 - 16s > 0 bracket the unique root.
    double root = refine_root([&](double x) { return q(x); }, [&](double x) { return dq(x); },
                              0.0, 1.0);
    return root;
}

EinsteinSpec einstein_spec(int genus, int k) {
    if (genus < 2) throw std::invalid_argument("einstein_spec: genus >= 2 required");
    if (k < 1) throw std::invalid_argument("einstein_spec: k >= 1 required");
    Rational s_exact = Rational::of(k, genus - 1);
    if (s_exact.at_least(2))
        throw std::invalid_argument("einstein_spec: s = k/(genus-1) >= 2 admits no quartic root in (0,1)");
    EinsteinSpec spec;
    spec.genus = genus;
    spec.k = k;
    spec.s_exact = s_exact;
    spec.s = s_exact.value();
    spec.eps = -1;
    auto root = q_root(spec.s, -1);
    if (!root) throw std::invalid_argument("einstein_spec: quartic root missing");
    spec.x_star = *root;
    SolvedCD cd = solve_CD(spec.x_star, 0.0, spec.s, -1);
    // D vanishes at the quartic root by construction; keep the leftover as a
    // certificate and store an exactly-even, exactly-quartic coefficient set.
    spec.d_residual = std::abs(cd.D_norm);
    spec.coeffs = Coefficients::from_normalized(cd.C_norm, 0.0, 0.0, spec.s);
    return spec;
}

std::vector<EinsteinSpec> enumerate_einstein(int genus) {
    if (genus < 2) throw std::invalid_argument("enumerate_einstein: genus >= 2 required");
    std::vector<EinsteinSpec> out;
    for (int k = 1;; ++k) {
        Rational s = Rational::of(k, genus - 1);
        if (s.at_least(2)) break;  // exact threshold: k <= 2 genus - 3
        out.push_back(einstein_spec(genus, k));
    }
    return out;
}

MetricProfile einstein_profile(const EinsteinSpec& spec) {
    ProfilePolynomial poly = p_poly(spec.coeffs, spec.eps);
    poly.provenance = PolyProvenance::EinsteinBranch;
    BoundaryPair pair{spec.x_star, -spec.x_star, -1};
    if (!positivity_check(poly, pair))
        throw std::domain_error("einstein_profile: positivity certificate failed on (-x*, x*)");

    auto z0 = poly.z0_function();
    auto dz0 = poly.z0_derivative_function();
    const double s = spec.s;
    TurningPointProblem problem;
    problem.Q = [z0, s](double h) { return z0(h / s); };
    problem.dQ = [dz0, s](double h) { return dz0(h / s) / s; };
    problem.x0 = -s * spec.x_star;
    problem.x1 = s * spec.x_star;
    PeriodicSolution sol = integrate_turning_ivp(problem);

    MetricProfile profile = build_profile(sol, s, -1, -4.0);
    profile.family_tag = "einstein";
    profile.params = derive_params(spec.genus, spec.k, -1);
    profile.block = GrayBlock{spec.coeffs, spec.x_star, -spec.x_star, spec.eps, -1};
    return profile;
}

}  // namespace grayforge
