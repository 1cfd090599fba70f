#include <doctest.h>

#include <cmath>
#include <random>

#include "grayforge/chart.hpp"
#include "grayforge/product.hpp"
#include "grayforge/ricci.hpp"

using namespace grayforge;

TEST_CASE("closed-form endpoints") {
    auto [y, x] = product_endpoints(2.0);
    CHECK(y == doctest::Approx(11.0 / 6.0).epsilon(1e-15));
    CHECK(x == doctest::Approx(11.0 / 3.0).epsilon(1e-15));

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> as(1.2, 6.0);
    for (int it = 0; it < 50; ++it) {
        double alpha = as(rng);
        auto [yy, xx] = product_endpoints(alpha);
        CHECK(xx / yy == doctest::Approx(alpha).epsilon(1e-14));
        CHECK(yy > 0.0);
    }
    CHECK_THROWS_AS(product_endpoints(1.0), std::invalid_argument);
    CHECK_THROWS_AS(product_endpoints(0.5), std::invalid_argument);
    CHECK_THROWS_AS(product_endpoints(1.0 + 1e-9), DegenerateParameterError);
}

TEST_CASE("coefficient solve: frozen values, signs, and the fourth condition") {
    auto [y, x] = product_endpoints(2.0);
    ProductCoefficients c = product_solve_coeffs(y, x);
    CHECK(c.A3 == doctest::Approx(-7.33333).epsilon(1e-5));
    CHECK(c.B3 == doctest::Approx(-0.0147519).epsilon(1e-4));
    CHECK(c.C3 == doctest::Approx(0.0495783).epsilon(1e-4));
    CHECK(c.residual4 < 1e-10 * std::max(1.0, std::abs(c.A3)));

    for (double alpha : {1.5, 2.0, 3.0, 5.0}) {
        auto [yy, xx] = product_endpoints(alpha);
        ProductCoefficients cc = product_solve_coeffs(yy, xx);
        CHECK(cc.C3 > 0.0);
        CHECK(cc.A3 < 0.0);
        CHECK(cc.B3 < 0.0);
        CHECK(cc.residual4 < 1e-8);
    }

    // off the consistency curve the fourth residual is macroscopic
    ProductCoefficients off = product_solve_coeffs(y + 1e-3, x);
    CHECK(off.residual4 > 1e-4);
}

TEST_CASE("second-order relation holds identically for the solved coefficients") {
    ProductSpec spec = make_product_spec(2.0);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> gs(spec.y, spec.x);
    auto P = [&](double g) {
        return spec.A3 / g + spec.B3 * std::pow(g, 4) + spec.C3 * g * g + 4.0;
    };
    auto dP = [&](double g) {
        return -spec.A3 / (g * g) + 4.0 * spec.B3 * g * g * g + 2.0 * spec.C3 * g;
    };
    auto ddP = [&](double g) {
        return 2.0 * spec.A3 / (g * g * g) + 12.0 * spec.B3 * g * g + 2.0 * spec.C3;
    };
    for (int it = 0; it < 50; ++it) {
        double g = gs(rng);
        double residual =
            g * g * ddP(g) - 2.0 * dP(g) * g - 4.0 * P(g) + 16.0 + 6.0 * spec.C3 * g * g;
        CHECK(std::abs(residual) < 1e-10 * std::max(1.0, std::abs(P(g))));
    }
}

TEST_CASE("closed-form eigenvalues match the symbolic reduction at random points") {
    ProductSpec spec = make_product_spec(2.0);
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> gs(spec.y + 1e-3, spec.x - 1e-3);
    for (int it = 0; it < 50; ++it) {
        double g = gs(rng);
        double P = spec.A3 / g + spec.B3 * std::pow(g, 4) + spec.C3 * g * g + 4.0;
        double dP = -spec.A3 / (g * g) + 4.0 * spec.B3 * g * g * g + 2.0 * spec.C3 * g;
        double ddP = 2.0 * spec.A3 / (g * g * g) + 12.0 * spec.B3 * g * g + 2.0 * spec.C3;
        auto [lambda, mu] = product_eigenvalues(spec, g);
        CHECK(-dP / g - 0.5 * ddP == doctest::Approx(lambda).epsilon(1e-10));
        CHECK(-dP / g - P / (g * g) + 4.0 / (g * g) == doctest::Approx(mu).epsilon(1e-10));
    }
    // frozen values at the lower endpoint
    auto [ly, my] = product_eigenvalues(spec, spec.y);
    CHECK(ly == doctest::Approx(0.347116).epsilon(1e-4));
    CHECK(my == doctest::Approx(0.099190).epsilon(1e-4));
    // two everywhere-different eigenvalues: lambda - mu = -5 B h^2 > 0
    for (double h : {spec.y, 0.5 * (spec.y + spec.x), spec.x}) {
        auto [l, m] = product_eigenvalues(spec, h);
        CHECK(l - m == doctest::Approx(-5.0 * spec.B3 * h * h).epsilon(1e-12));
        CHECK(l - m > 0.0);
    }
}

TEST_CASE("end-to-end profile: range, boundary, eigenvalue agreement") {
    ProductSpec spec = make_product_spec(2.0);
    MetricProfile p = product_profile(spec);
    CHECK(p.s == 0.0);
    CHECK(p.K == -4.0);
    CHECK(p.g.front() == doctest::Approx(11.0 / 6.0).epsilon(1e-6));
    CHECK(p.g.back() == doctest::Approx(11.0 / 3.0).epsilon(1e-6));
    CHECK(check_boundary(p).passed());
    CHECK(check_parity(p).passed());

    RicciField field = ricci_eigenvalues(p);
    CHECK(check_gray_1d(field, p).passed());
    double worst_l = 0.0, worst_m = 0.0, worst_const = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!field.trusted[i]) continue;
        auto [l, m] = product_eigenvalues(spec, p.h[i]);
        worst_l = std::max(worst_l, std::abs(field.lambda0[i] - l));
        worst_l = std::max(worst_l, std::abs(field.lambda1[i] - l));
        worst_m = std::max(worst_m, std::abs(field.mu[i] - m));
        worst_const = std::max(worst_const,
                               std::abs(field.lambda[i] - 2.0 * field.mu[i] - 3.0 * spec.C3));
    }
    CHECK(worst_l < 1e-6);
    CHECK(worst_m < 1e-6);
    CHECK(worst_const < 1e-6);

    VerificationReport agreement = check_engine_agreement(p, field, 10, 1e-4);
    CHECK(agreement.passed());
}

TEST_CASE("the trace-free part is a Killing tensor with the stated eigenvalues") {
    ProductSpec spec = make_product_spec(2.0);
    MetricProfile p = product_profile(spec);
    ProfileFunctions fns = profile_functions(p);
    ChartGeometry chart = ChartGeometry::for_curvature(p.K, p.s);
    auto ev = make_evaluator(p);

    auto samples = default_samples(fns, chart, 3);
    CHECK(check_killing_tensor(fns, chart, samples, 1e-4).passed());
    CHECK(check_gray_tensorial(fns, chart, samples, 1e-4).passed());

    // S eigenvalues: C3 on the fiber block, 5 B3 h^2 + C3 on the base block
    for (double t : {-0.4 * p.a, 0.1 * p.a, 0.5 * p.a}) {
        Vec4 q = chart.base_point;
        q[0] = t;
        FrameEigenvalues fe = chart_frame_eigenvalues(fns, chart, q);
        double h = ev->h(t);
        double s_fiber = fe.lam0 - fe.tau / 3.0;
        double s_base = fe.lam2a - fe.tau / 3.0;
        CHECK(std::abs(s_fiber - spec.C3) < 1e-5);
        CHECK(std::abs(s_base - (5.0 * spec.B3 * h * h + spec.C3)) < 1e-5);
    }
}

TEST_CASE("distinct members have distinct invariants") {
    double prev = -1e300;
    for (double alpha : {1.5, 2.0, 2.5, 3.0, 4.0}) {
        ProductSpec spec = make_product_spec(alpha);
        double inv = 3.0 * spec.C3;  // the constant lambda - 2 mu
        CHECK(inv != doctest::Approx(prev).epsilon(1e-9));
        prev = inv;
    }
}
