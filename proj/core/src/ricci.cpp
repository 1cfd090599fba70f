#include "grayforge/ricci.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "grayforge/gridfd.hpp"
#include "grayforge/linear.hpp"

namespace grayforge {

namespace {

struct DerivTable {
    std::vector<double> d1, d2;
};

// first and second derivatives of uniformly sampled values, 7-point stencils
// (one-sided near the edges)
DerivTable differentiate(const std::vector<double>& v, double dt) {
    const std::size_t n = v.size();
    DerivTable out;
    out.d1.resize(n);
    out.d2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.d1[i] = grid_derivative(v, i, dt, 1, 7);
        out.d2[i] = grid_derivative(v, i, dt, 2, 7);
    }
    return out;
}

}  // namespace

RicciField ricci_eigenvalues(const MetricProfile& profile) {
    const std::size_t n = profile.size();
    if (n < 16) throw std::invalid_argument("ricci_eigenvalues: grid too small");
    const double dt = profile.t_grid[1] - profile.t_grid[0];
    const double s2 = profile.s * profile.s;
    const double K = profile.K;

    const DerivTable df = differentiate(profile.f, dt);
    const DerivTable dg = differentiate(profile.g, dt);

    double f_max = 0.0;
    for (double v : profile.f) f_max = std::max(f_max, std::abs(v));
    const double f_floor = 0.02 * f_max;

    RicciField field;
    field.lambda0.resize(n);
    field.lambda1.resize(n);
    field.lambda2.resize(n);
    field.tau.resize(n);
    field.lambda.resize(n);
    field.mu.resize(n);
    field.trusted.assign(n, 0);

    for (std::size_t i = 0; i < n; ++i) {
        const double f = profile.f[i], g = profile.g[i];
        const double fp = df.d1[i], fpp = df.d2[i];
        const double gp = dg.d1[i], gpp = dg.d2[i];
        double l0, l1, l2;
        if (i == 0 || i == n - 1 || std::abs(f) < 1e-12) {
            // endpoint limits: f -> 0, f' -> -/+1, g' -> 0, so
            // f''/f -> f'''/f' and f'g'/(fg) -> g''/g
            const double fppp = grid_derivative(profile.f, i, dt, 3, 8);
            const double fp_end = fp != 0.0 ? fp : (i == 0 ? 1.0 : -1.0);
            const double ratio_ff = fppp / fp_end;
            l0 = -2.0 * gpp / g - ratio_ff;
            l1 = -ratio_ff - 2.0 * gpp / g;
            l2 = -2.0 * gpp / g - K / (g * g);
        } else {
            l0 = -2.0 * gpp / g - fpp / f;
            l1 = -fpp / f - 2.0 * fp * gp / (f * g) + 2.0 * s2 * f * f / (g * g * g * g);
            l2 = -gpp / g - fp * gp / (f * g) - (gp / g) * (gp / g) -
                 2.0 * s2 * f * f / (g * g * g * g) - K / (g * g);
        }
        field.lambda0[i] = l0;
        field.lambda1[i] = l1;
        field.lambda2[i] = l2;
        field.tau[i] = l0 + l1 + 2.0 * l2;
        field.lambda[i] = 0.5 * (l0 + l1);
        field.mu[i] = l2;
        // ratio terms divide by f and by dense-stencil margins at the edges
        if (i >= 3 && i + 3 < n && std::abs(f) >= f_floor) field.trusted[i] = 1;
    }

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!field.trusted[i]) continue;
        scale = std::max({scale, std::abs(field.lambda0[i]), std::abs(field.lambda1[i]),
                          std::abs(field.lambda2[i])});
    }
    field.scale = scale;
    return field;
}

MuFit fit_mu_relation(const RicciField& field, const MetricProfile& profile) {
    // normal equations for mu ~ D g^2 - C
    double s_xx = 0.0, s_x1 = 0.0, s_11 = 0.0, s_xy = 0.0, s_1y = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i) {
        if (!field.trusted[i]) continue;
        const double x = profile.g[i] * profile.g[i];
        const double y = field.mu[i];
        s_xx += x * x;
        s_x1 += x;
        s_11 += 1.0;
        s_xy += x * y;
        s_1y += y;
    }
    if (s_11 < 4.0) throw std::invalid_argument("fit_mu_relation: too few trusted samples");
    std::array<std::array<double, 2>, 2> A{{{s_xx, -s_x1}, {-s_x1, s_11}}};
    std::array<double, 2> b{s_xy, -s_1y};
    auto sol = solve_linear<2>(A, b);
    MuFit fit;
    fit.D_raw = sol[0];
    fit.C_raw = sol[1];
    double res = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i) {
        if (!field.trusted[i]) continue;
        const double x = profile.g[i] * profile.g[i];
        res = std::max(res, std::abs(field.mu[i] - (fit.D_raw * x - fit.C_raw)));
    }
    fit.residual = res;
    return fit;
}

VerificationReport check_gray_1d(const RicciField& field, const MetricProfile& profile,
                                 double tol) {
    VerificationReport report("gray-1d:" + profile.family_tag);
    const std::size_t n = field.size();
    const double norm = std::max(1.0, field.scale);

    std::size_t trusted_count = 0;
    for (char t : field.trusted) trusted_count += static_cast<std::size_t>(t);
    report.add_flag("trusted interior nonempty", trusted_count >= n / 4);

    // (i) the two eigenvalues along the totally geodesic leaves coincide
    double eig_diff = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (field.trusted[i]) eig_diff = std::max(eig_diff, std::abs(field.lambda0[i] - field.lambda1[i]));
    report.add("lambda0 = lambda1", eig_diff / norm, tol);

    // (ii) lambda - 2 mu constant
    double lm_min = 0.0, lm_max = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (!field.trusted[i]) continue;
        const double v = field.lambda[i] - 2.0 * field.mu[i];
        if (first) {
            lm_min = lm_max = v;
            first = false;
        } else {
            lm_min = std::min(lm_min, v);
            lm_max = std::max(lm_max, v);
        }
    }
    report.add("lambda - 2 mu constant", (lm_max - lm_min) / norm, tol);

    // (iii) mu = D g^2 - C fit
    MuFit fit = fit_mu_relation(field, profile);
    report.add("mu = D g^2 - C fit", fit.residual / norm, tol);
    report.add_informational("fit D_raw", fit.D_raw, 1e300);
    report.add_informational("fit C_raw", fit.C_raw, 1e300);

    // (iv) Killing relation mu' = 2 (lambda - mu) g'/g. mu is itself a
    // finite-difference product, so its derivative uses strided stencils to
    // keep the 1/dt noise amplification down; several strides trade noise
    // against truncation and the sharpest estimate wins.
    const double dt = profile.t_grid[1] - profile.t_grid[0];
    double killing_res = 1e300;
    double mu_deriv_scale = 1.0;
    for (std::size_t stride : {std::size_t{8}, std::size_t{20}, std::size_t{50}}) {
        if (6 * stride + 1 > n) continue;
        std::vector<double> stencil_t(7);
        for (int j = 0; j < 7; ++j)
            stencil_t[static_cast<std::size_t>(j)] = (j - 3) * static_cast<double>(stride) * dt;
        const auto w = fd_weights(0.0, stencil_t, 1);
        double res = 0.0;
        double deriv_scale = 0.0;
        bool any = false;
        for (std::size_t i = 3 * stride; i + 3 * stride < n; ++i) {
            if (!field.trusted[i] || !field.trusted[i - 3 * stride] || !field.trusted[i + 3 * stride])
                continue;
            double mup = 0.0;
            for (int j = 0; j < 7; ++j)
                mup += w[static_cast<std::size_t>(j)] *
                       field.mu[i + static_cast<std::size_t>(j) * stride - 3 * stride];
            const double gp = grid_derivative(profile.g, i, dt, 1, 7);
            const double rhs = 2.0 * (field.lambda[i] - field.mu[i]) * gp / profile.g[i];
            res = std::max(res, std::abs(mup - rhs));
            deriv_scale = std::max(deriv_scale, std::abs(mup));
            any = true;
        }
        if (any && res < killing_res) {
            killing_res = res;
            mu_deriv_scale = deriv_scale;
        }
    }
    report.add("mu' = 2(lambda - mu) g'/g", killing_res / std::max(1.0, mu_deriv_scale), tol);
    return report;
}

VerificationReport check_einstein(const RicciField& field, double tol) {
    VerificationReport report("einstein");
    const double norm = std::max(1.0, field.scale);
    std::size_t trusted_count = 0;
    for (char t : field.trusted) trusted_count += static_cast<std::size_t>(t);
    report.add_flag("trusted interior nonempty", trusted_count >= field.size() / 4);
    double d02 = 0.0, d12 = 0.0, dtau = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i) {
        if (!field.trusted[i]) continue;
        d02 = std::max(d02, std::abs(field.lambda0[i] - field.lambda2[i]));
        d12 = std::max(d12, std::abs(field.lambda1[i] - field.lambda2[i]));
        dtau = std::max(dtau, std::abs(field.tau[i] - 4.0 * field.lambda0[i]));
    }
    report.add("lambda0 = lambda2", d02 / norm, tol);
    report.add("lambda1 = lambda2", d12 / norm, tol);
    report.add("tau = 4 lambda0", dtau / norm, tol);
    return report;
}

}  // namespace grayforge
