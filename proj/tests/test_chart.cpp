#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "grayforge/chart.hpp"
#include "grayforge/einstein.hpp"
#include "grayforge/families.hpp"
#include "grayforge/ricci.hpp"

using namespace grayforge;

namespace {

ProfileFunctions analytic(double (*f)(double), double (*g)(double), double t_min, double t_max) {
    ProfileFunctions fns;
    fns.f = f;
    fns.g = g;
    fns.t_min = t_min;
    fns.t_max = t_max;
    return fns;
}

double det4(Mat4 m) {
    double det = 1.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (m[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < 4; ++r) {
            double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

// Jacobi eigenvalues of a symmetric 4x4 (for the signature check)
std::array<double, 4> sym_eigenvalues(Mat4 m) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) off += m[i][j] * m[i][j];
        if (off < 1e-24) break;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) {
                if (std::abs(m[p][q]) < 1e-18) continue;
                double theta = 0.5 * std::atan2(2.0 * m[p][q], m[q][q] - m[p][p]);
                double c = std::cos(theta), s = std::sin(theta);
                for (int k = 0; k < 4; ++k) {
                    double mkp = m[k][p], mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for (int k = 0; k < 4; ++k) {
                    double mpk = m[p][k], mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
    }
    std::array<double, 4> ev{m[0][0], m[1][1], m[2][2], m[3][3]};
    std::sort(ev.begin(), ev.end());
    return ev;
}

double fn_one(double) { return 1.0; }
double fn_sin(double t) { return std::sin(t); }

}  // namespace

TEST_CASE("flat chart: identity-like metric and vanishing Ricci") {
    ProfileFunctions fns = analytic(fn_one, fn_one, -10.0, 10.0);
    ChartGeometry chart = ChartGeometry::for_curvature(0.0, 0.0);
    Vec4 q{0.3, 0.2, 0.25, 0.4};
    Mat4 m = chart_metric(fns, chart, q);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double expect = (i == j) ? (i < 2 ? 1.0 : -1.0) : 0.0;
            CHECK(m[i][j] == doctest::Approx(expect).epsilon(1e-14));
        }
    ChartRicci r = chart_ricci(fns, chart, q);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(std::abs(r.ricci[i][j]) < 1e-7);
    CHECK(std::abs(r.tau) < 1e-7);
}

TEST_CASE("metric determinant and neutral signature") {
    // hyperbolic chart with a nontrivial connection twist
    ProfileFunctions fns = analytic(fn_sin, fn_one, 0.2, M_PI - 0.2);
    ChartGeometry chart = ChartGeometry::for_curvature(-4.0, 1.0);
    chart.c = 0.5;
    for (double t : {0.5, 1.0, 2.2}) {
        Vec4 q{t, 0.7, 0.4, 0.9};
        Mat4 m = chart_metric(fns, chart, q);
        const double f = std::sin(t), g = 1.0;
        const double b11 = 1.0 / (4.0 * q[3] * q[3]);
        // block structure: det = f^2 g^4 b11 b22 (positive: two minus signs)
        CHECK(det4(m) == doctest::Approx(f * f * g * g * g * g * b11 * b11).epsilon(1e-12));
        auto ev = sym_eigenvalues(m);
        CHECK(ev[0] < 0.0);
        CHECK(ev[1] < 0.0);
        CHECK(ev[2] > 0.0);
        CHECK(ev[3] > 0.0);
    }
}

TEST_CASE("product-like closed form: eigenvalues (1, 1, 4, 4) at t = 1") {
    // f = sin t, g = 1, s = 0, K = -4
    ProfileFunctions fns = analytic(fn_sin, fn_one, 0.15, M_PI - 0.15);
    ChartGeometry chart = ChartGeometry::for_curvature(-4.0, 0.0);
    Vec4 q = chart.base_point;
    q[0] = 1.0;
    FrameEigenvalues fe = chart_frame_eigenvalues(fns, chart, q);
    CHECK(fe.lam0 == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(fe.lam1 == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(fe.lam2a == doctest::Approx(4.0).epsilon(1e-5));
    CHECK(fe.lam2b == doctest::Approx(4.0).epsilon(1e-5));
    CHECK(fe.tau == doctest::Approx(10.0).epsilon(1e-5));
    CHECK(fe.offdiag < 1e-5);
}

TEST_CASE("engine agreement: gray family on the spherical base (genus 0)") {
    MetricProfile p = gray_symmetric_profile(0, 1, 0.5);
    RicciField field = ricci_eigenvalues(p);
    VerificationReport r = check_engine_agreement(p, field, 10, 1e-4);
    CHECK(r.passed());
}

TEST_CASE("engine agreement: genus 1 flat-base family") {
    MetricProfile p = gray_symmetric_profile(1, 1, 0.45);
    CHECK(p.K == 0.0);
    RicciField field = ricci_eigenvalues(p);
    VerificationReport r = check_engine_agreement(p, field, 6, 1e-4);
    CHECK(r.passed());
}

TEST_CASE("tensorial cyclic condition holds on constructed members, fails when perturbed") {
    MetricProfile p = gray_symmetric_profile(0, 1, 0.5);
    RicciField field = ricci_eigenvalues(p);
    ProfileFunctions fns = profile_functions(p);
    std::size_t mid = p.size() / 2;
    ChartGeometry chart =
        calibrate_connection(fns, p.K, p.s, p.t_grid[mid], field.lambda1[mid]);

    auto samples = default_samples(fns, chart, 4);
    VerificationReport gray = check_gray_tensorial(fns, chart, samples, 1e-4);
    CHECK(gray.passed());
    VerificationReport killing = check_killing_tensor(fns, chart, samples, 1e-4);
    CHECK(killing.passed());

    // smooth bump on g breaks the condition well above the tolerance
    auto ev = make_evaluator(p);
    ProfileFunctions bad = fns;
    bad.g = [ev](double t) {
        return ev->g(t) * (1.0 + 1e-3 * std::exp(-std::pow(t / 0.25, 2)));
    };
    VerificationReport gray_bad = check_gray_tensorial(bad, chart, samples, 1e-4);
    const CheckEntry* worst = gray_bad.find("cyclic Ricci residual (max over samples)");
    REQUIRE(worst != nullptr);
    CHECK(worst->value > 1e-2);
    VerificationReport killing_bad = check_killing_tensor(bad, chart, samples, 1e-4);
    CHECK(!killing_bad.passed());
}

TEST_CASE("Einstein member satisfies the cyclic condition (Einstein implies this class)") {
    MetricProfile p = einstein_profile(einstein_spec(3, 1));
    RicciField field = ricci_eigenvalues(p);
    ProfileFunctions fns = profile_functions(p);
    std::size_t mid = p.size() / 2;
    ChartGeometry chart =
        calibrate_connection(fns, p.K, p.s, p.t_grid[mid], field.lambda1[mid]);
    auto samples = default_samples(fns, chart, 3);
    CHECK(check_gray_tensorial(fns, chart, samples, 1e-4).passed());
}
