#include "grayforge/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "grayforge/gridfd.hpp"
#include "grayforge/quadrature.hpp"

namespace grayforge {

// ---------------------------------------------------------------------------
// ProfileEvaluator

ProfileEvaluator::ProfileEvaluator(ProfileRecipe recipe) : recipe_(std::move(recipe)) {
    if (!recipe_.valid || !recipe_.Q || !recipe_.dQ)
        throw std::invalid_argument("ProfileEvaluator: recipe is not populated");
    if (!(recipe_.h_hi > recipe_.h_lo))
        throw std::invalid_argument("ProfileEvaluator: h_hi > h_lo required");

    const double mid = 0.5 * (recipe_.h_lo + recipe_.h_hi);
    left_.root = recipe_.h_lo;
    left_.dir = 1.0;
    left_.u_max = std::sqrt(mid - recipe_.h_lo);
    right_.root = recipe_.h_hi;
    right_.dir = -1.0;
    right_.u_max = std::sqrt(recipe_.h_hi - mid);

    for (Half* half : {&left_, &right_}) {
        build_zeta_series(*half);
        // verify the interpolant against the sampling form between the nodes
        double worst = 0.0;
        for (int j = 0; j < 33; ++j) {
            double v = half->u_max * (j + 0.5) / 33.0;
            double direct = zeta_direct(*half, v);
            worst = std::max(worst, std::abs(zeta(*half, v) - direct) / std::max(1.0, direct));
        }
        if (worst > 1e-10)
            throw std::runtime_error("ProfileEvaluator: rate interpolant did not converge");

        const int nodes = 65;
        half->table_u.resize(nodes);
        half->table_t.resize(nodes);
        for (int k = 0; k < nodes; ++k) {
            double u = half->u_max * static_cast<double>(k) / (nodes - 1);
            half->table_u[static_cast<std::size_t>(k)] = u;
            half->table_t[static_cast<std::size_t>(k)] = arc(*half, u);
        }
    }
    const double arc_left = left_.table_t.back();
    const double arc_right = right_.table_t.back();
    a_ = 0.5 * (arc_left + arc_right);
    t_mid_ = -a_ + arc_left;
}

// zeta(v) = Q(root + dir v^2)/v^2. Evaluating Q directly next to its root
// cancels catastrophically (relative error ~1e-11 at the innermost Gauss
// nodes), and the chart engine second-differences everything downstream, so
// the ratio is sampled through the integral of dQ instead:
//   Q(root + dir w) = dir * integral_0^w dQ(root + dir tau) dtau
// which has no cancellation. The samples feed a Chebyshev interpolant; all
// queries then see a C-infinity function with ~1e-15 uniform error.
double ProfileEvaluator::zeta_direct(const Half& half, double u) const {
    const double range = recipe_.h_hi - recipe_.h_lo;
    const double w = u * u;
    if (w < 1e-14 * range) {
        double slope = std::abs(recipe_.dQ(half.root));
        if (!(slope > 0.0)) throw std::domain_error("ProfileEvaluator: root is not simple");
        return slope;
    }
    double z;
    if (w <= 0.6 * range) {
        auto dq = [&](double tau) { return recipe_.dQ(half.root + half.dir * tau); };
        z = half.dir * default_gauss_rule().integrate(dq, 0.0, w) / w;
    } else {
        z = recipe_.Q(half.root + half.dir * w) / w;
    }
    if (!(z > 0.0)) throw std::domain_error("ProfileEvaluator: rate function not positive inside interval");
    return z;
}

void ProfileEvaluator::build_zeta_series(Half& half) const {
    const int N = 96;  // Chebyshev-Lobatto order; the ratio is analytic on [0, u_max]
    std::vector<double> samples(static_cast<std::size_t>(N) + 1);
    for (int j = 0; j <= N; ++j) {
        double xi = std::cos(M_PI * j / N);
        double v = 0.5 * (xi + 1.0) * half.u_max;
        samples[static_cast<std::size_t>(j)] = zeta_direct(half, v);
    }
    half.zeta_cheb.assign(static_cast<std::size_t>(N) + 1, 0.0);
    for (int k = 0; k <= N; ++k) {
        double acc = 0.0;
        for (int j = 0; j <= N; ++j) {
            double term = samples[static_cast<std::size_t>(j)] * std::cos(M_PI * j * k / N);
            if (j == 0 || j == N) term *= 0.5;
            acc += term;
        }
        acc *= 2.0 / N;
        if (k == 0 || k == N) acc *= 0.5;
        half.zeta_cheb[static_cast<std::size_t>(k)] = acc;
    }
}

double ProfileEvaluator::zeta(const Half& half, double u) const {
    // Clenshaw on [0, u_max]
    const double xi = std::clamp(2.0 * u / half.u_max - 1.0, -1.0, 1.0);
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = half.zeta_cheb.size(); k-- > 1;) {
        double b0 = 2.0 * xi * b1 - b2 + half.zeta_cheb[k];
        b2 = b1;
        b1 = b0;
    }
    return xi * b1 - b2 + half.zeta_cheb[0];
}

double ProfileEvaluator::arc(const Half& half, double u) const {
    if (u <= 0.0) return 0.0;
    auto integrand = [&](double v) { return 2.0 / std::sqrt(zeta(half, v)); };
    return default_gauss_rule().integrate_composite(integrand, 0.0, u, 2);
}

double ProfileEvaluator::solve_half(const Half& half, double target) const {
    // bracket from the precomputed table
    const auto& tu = half.table_u;
    const auto& tt = half.table_t;
    if (target <= 0.0) return 0.0;
    if (target >= tt.back()) return tu.back();
    std::size_t hi = static_cast<std::size_t>(
        std::lower_bound(tt.begin(), tt.end(), target) - tt.begin());
    std::size_t lo = hi > 0 ? hi - 1 : 0;
    double ulo = tu[lo], uhi = tu[hi];
    double flo = tt[lo] - target, fhi = tt[hi] - target;
    // linear initial guess, then safeguarded Newton on arc(u) - target,
    // iterated to the roundoff stall: the chart engine second-differences
    // these values, so every digit matters
    double u = ulo + (uhi - ulo) * (-flo) / (fhi - flo);
    const double floor_tol = 4e-17 * (1.0 + a_);
    double prev_abs = 1e300;
    int stalled = 0;
    for (int it = 0; it < 100; ++it) {
        double fu = arc(half, u) - target;
        double afu = std::abs(fu);
        if (afu < floor_tol) break;
        if (afu >= prev_abs) {
            if (++stalled >= 2) break;
        } else {
            stalled = 0;
        }
        prev_abs = afu;
        if (fu < 0.0) {
            ulo = u;
            flo = fu;
        } else {
            uhi = u;
            fhi = fu;
        }
        double deriv = 2.0 / std::sqrt(zeta(half, u));
        double next = u - fu / deriv;
        if (!(next > ulo && next < uhi)) next = 0.5 * (ulo + uhi);
        if (next == u) break;
        u = next;
    }
    return u;
}

double ProfileEvaluator::h(double t) const {
    const double tc = std::clamp(t, -a_, a_);
    if (tc <= t_mid_) {
        double u = solve_half(left_, tc + a_);
        return left_.root + u * u;
    }
    double u = solve_half(right_, a_ - tc);
    return right_.root - u * u;
}

double ProfileEvaluator::dh(double t) const {
    double q = recipe_.Q(h(t));
    return std::sqrt(std::max(0.0, q));
}

double ProfileEvaluator::f(double t) const {
    switch (recipe_.f_rule) {
        case FRule::DhDt:
            return dh(t);
        case FRule::HTimesDhOverS:
            return h(t) * dh(t) / recipe_.s;
    }
    return 0.0;
}

double ProfileEvaluator::g(double t) const {
    const double hv = h(t);
    switch (recipe_.g_rule) {
        case GRule::SqrtS2MinusH2:
            return std::sqrt(std::max(0.0, recipe_.s * recipe_.s - hv * hv));
        case GRule::SqrtH2MinusS2:
            return std::sqrt(std::max(0.0, hv * hv - recipe_.s * recipe_.s));
        case GRule::Identity:
            return hv;
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// assembly

namespace {

double g_from_rule(const ProfileRecipe& recipe, double hv) {
    switch (recipe.g_rule) {
        case GRule::SqrtS2MinusH2:
            return std::sqrt(std::max(0.0, recipe.s * recipe.s - hv * hv));
        case GRule::SqrtH2MinusS2:
            return std::sqrt(std::max(0.0, hv * hv - recipe.s * recipe.s));
        case GRule::Identity:
            return hv;
    }
    return 0.0;
}

void validate_branch(const ProfileRecipe& recipe) {
    const double s = recipe.s;
    switch (recipe.g_rule) {
        case GRule::SqrtS2MinusH2:
            if (!(std::abs(recipe.h_lo) < s && std::abs(recipe.h_hi) < s))
                throw std::domain_error("profile: branch violation, |h| reaches s so g would vanish");
            break;
        case GRule::SqrtH2MinusS2:
            if (!(recipe.h_lo > s))
                throw std::domain_error("profile: branch violation, h must stay above s");
            break;
        case GRule::Identity:
            if (!(recipe.h_lo > 0.0))
                throw std::domain_error("profile: g = h must stay positive");
            break;
    }
}

}  // namespace

MetricProfile assemble_profile(const PeriodicSolution& sol, const ProfileRecipe& recipe,
                               std::string family_tag) {
    if (!recipe.valid) throw std::invalid_argument("assemble_profile: recipe required");
    validate_branch(recipe);
    const std::size_t n = sol.phi.size();
    if (n < 9) throw std::invalid_argument("assemble_profile: trajectory too short");

    MetricProfile p;
    p.family_tag = std::move(family_tag);
    p.recipe = recipe;
    p.s = recipe.s;
    p.K = recipe.K;
    p.a = 0.5 * sol.l;
    p.t_grid.resize(n);
    p.h.resize(n);
    p.f.resize(n);
    p.g.resize(n);
    const double denom = 2.0 * static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        // symmetric grid: t[n-1-i] = -t[i] exactly
        p.t_grid[i] = sol.l * static_cast<double>(2.0 * static_cast<double>(i) - static_cast<double>(n - 1)) / denom;
        const std::size_t j = n - 1 - i;
        const double hv = sol.phi[j];
        const double hdot = -sol.dphi[j];
        p.h[i] = hv;
        switch (recipe.f_rule) {
            case FRule::DhDt:
                p.f[i] = hdot;
                break;
            case FRule::HTimesDhOverS:
                p.f[i] = hv * hdot / recipe.s;
                break;
        }
        p.g[i] = g_from_rule(recipe, hv);
    }
    // endpoint f is exactly zero by construction of the turning points
    p.f.front() = 0.0;
    p.f.back() = 0.0;
    return p;
}

MetricProfile build_profile(const PeriodicSolution& sol, double s, int A, double K) {
    if (A != -1 && A != 1) throw std::invalid_argument("build_profile: A must be -1 or +1");
    if (!(s > 0.0)) throw std::invalid_argument("build_profile: s > 0 required");
    ProfileRecipe recipe;
    recipe.Q = sol.problem.Q;
    recipe.dQ = sol.problem.dQ;
    recipe.h_lo = sol.problem.x0;
    recipe.h_hi = sol.problem.x1;
    recipe.g_rule = A == -1 ? GRule::SqrtS2MinusH2 : GRule::SqrtH2MinusS2;
    recipe.f_rule = FRule::DhDt;
    recipe.s = s;
    recipe.K = K;
    recipe.valid = true;
    return assemble_profile(sol, recipe, A == -1 ? "gray" : "gray-a-plus");
}

ProfileFunctions profile_functions(const MetricProfile& profile) {
    auto ev = make_evaluator(profile);
    ProfileFunctions fns;
    fns.f = [ev](double t) { return ev->f(t); };
    fns.g = [ev](double t) { return ev->g(t); };
    fns.t_min = -ev->half_domain();
    fns.t_max = ev->half_domain();
    return fns;
}

std::shared_ptr<const ProfileEvaluator> make_evaluator(const MetricProfile& profile) {
    return std::make_shared<const ProfileEvaluator>(profile.recipe);
}

// ---------------------------------------------------------------------------
// boundary / parity checks

VerificationReport check_boundary(const MetricProfile& profile, double value_tol,
                                  double deriv_tol) {
    VerificationReport report("boundary:" + profile.family_tag);
    const std::size_t n = profile.size();
    if (n < 9) throw std::invalid_argument("check_boundary: grid too small");
    const double dt = profile.t_grid[1] - profile.t_grid[0];

    report.add("f(-a)", profile.f.front(), value_tol);
    report.add("f(+a)", profile.f.back(), value_tol);

    const double df_lo = grid_derivative(profile.f, 0, dt, 1);
    const double df_hi = grid_derivative(profile.f, n - 1, dt, 1);
    const double dg_lo = grid_derivative(profile.g, 0, dt, 1);
    const double dg_hi = grid_derivative(profile.g, n - 1, dt, 1);
    report.add("f'(-a)-1", df_lo - 1.0, deriv_tol);
    report.add("f'(+a)+1", df_hi + 1.0, deriv_tol);
    report.add("g'(-a)", dg_lo, deriv_tol);
    report.add("g'(+a)", dg_hi, deriv_tol);

    report.add_flag("g(-a) nonzero", std::abs(profile.g.front()) > 1e-6);
    report.add_flag("g(+a) nonzero", std::abs(profile.g.back()) > 1e-6);
    return report;
}

VerificationReport check_parity(const MetricProfile& profile, double tol) {
    const bool symmetric =
        profile.family_tag == "gray-symmetric" || profile.family_tag == "einstein";
    return check_parity(profile, symmetric, tol);
}

VerificationReport check_parity(const MetricProfile& profile, bool expect_midpoint_symmetry,
                                double tol) {
    VerificationReport report("parity:" + profile.family_tag);
    const std::size_t n = profile.size();
    const double h_scale = std::max({1.0, std::abs(profile.h.front()), std::abs(profile.h.back())});

    if (profile.recipe.valid) {
        // Each endpoint: re-integrate from the turning state (h_end, 0) and
        // compare against the stored samples; evenness of h about the endpoint
        // is exactly the statement that the samples arrive on this trajectory.
        const std::size_t stride = std::max<std::size_t>(1, n / 80);
        const double dt = profile.t_grid[1] - profile.t_grid[0];
        Rhs2 rhs = [&](double, const State2& y) -> State2 {
            return {y[1], 0.5 * profile.recipe.dQ(y[0])};
        };
        for (int side = 0; side < 2; ++side) {
            const bool right = side == 1;
            const std::string name = right ? "endpoint(+a)" : "endpoint(-a)";
            State2 y{right ? profile.h.back() : profile.h.front(), 0.0};
            double t = 0.0;
            double h_res = 0.0, v_res = 0.0;
            for (int j = 1; j <= 8; ++j) {
                double tj = static_cast<double>(j) * static_cast<double>(stride) * dt;
                y = integrate_to(rhs, t, y, tj);
                t = tj;
                const std::size_t idx = right ? n - 1 - static_cast<std::size_t>(j) * stride
                                              : static_cast<std::size_t>(j) * stride;
                h_res = std::max(h_res, std::abs(y[0] - profile.h[idx]));
                const double speed = std::sqrt(std::max(0.0, profile.recipe.Q(profile.h[idx])));
                v_res = std::max(v_res, std::abs(std::abs(y[1]) - speed));
            }
            report.add(name + " h even", h_res / h_scale, tol);
            report.add(name + " slope magnitude", v_res / h_scale, tol);
        }
    }

    // midpoint parity (the symmetric families have h odd about t = 0)
    double h_odd = 0.0, f_even = 0.0, g_even = 0.0;
    for (std::size_t i = 0; i < n / 2; ++i) {
        const std::size_t j = n - 1 - i;
        h_odd = std::max(h_odd, std::abs(profile.h[i] + profile.h[j]));
        f_even = std::max(f_even, std::abs(profile.f[i] - profile.f[j]));
        g_even = std::max(g_even, std::abs(profile.g[i] - profile.g[j]));
    }
    if (expect_midpoint_symmetry) {
        report.add("midpoint h odd", h_odd / h_scale, tol);
        report.add("midpoint f even", f_even / h_scale, tol);
        report.add("midpoint g even", g_even / h_scale, tol);
    } else {
        report.add_informational("midpoint h odd", h_odd / h_scale, tol);
        report.add_informational("midpoint f even", f_even / h_scale, tol);
        report.add_informational("midpoint g even", g_even / h_scale, tol);
    }
    return report;
}

}  // namespace grayforge
