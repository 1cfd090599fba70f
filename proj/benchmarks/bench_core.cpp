#include <benchmark/benchmark.h>

#include "grayforge/chart.hpp"
#include "grayforge/einstein.hpp"
#include "grayforge/families.hpp"
#include "grayforge/gray_solver.hpp"
#include "grayforge/turning_point.hpp"
#include "grayforge/ricci.hpp"

using namespace grayforge;

namespace {

const MetricProfile& gray_profile() {
    static const MetricProfile p = gray_symmetric_profile(0, 1, 0.5);
    return p;
}

void BM_z0_eval(benchmark::State& state) {
    Coefficients k = Coefficients::from_normalized(12.9391, 8.3632, 0.0, 1.0);
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(z0_eval(k, 1, t));
        t = t < 0.9 ? t + 1e-6 : 0.1;
    }
}
BENCHMARK(BM_z0_eval);

void BM_solve_CD(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(solve_CD(0.5, 0.0, 1.0, 1));
}
BENCHMARK(BM_solve_CD);

void BM_eps_s(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(eps_s(1.0, -1));
}
BENCHMARK(BM_eps_s);

void BM_einstein_root(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(q_root(1.0, -1));
}
BENCHMARK(BM_einstein_root);

void BM_period_quadrature(benchmark::State& state) {
    TurningPointProblem problem;
    problem.Q = [](double u) { return 0.5 - 2.0 * u * u; };
    problem.dQ = [](double u) { return -4.0 * u; };
    problem.x0 = -0.5;
    problem.x1 = 0.5;
    for (auto _ : state) benchmark::DoNotOptimize(period_quadrature(problem));
}
BENCHMARK(BM_period_quadrature);

void BM_integrate_turning_ivp(benchmark::State& state) {
    TurningPointProblem problem;
    problem.Q = [](double u) { return 0.5 - 2.0 * u * u; };
    problem.dQ = [](double u) { return -4.0 * u; };
    problem.x0 = -0.5;
    problem.x1 = 0.5;
    for (auto _ : state) benchmark::DoNotOptimize(integrate_turning_ivp(problem, 201));
}
BENCHMARK(BM_integrate_turning_ivp)->Unit(benchmark::kMillisecond);

void BM_construct_gray_profile(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gray_symmetric_profile(0, 1, 0.5));
}
BENCHMARK(BM_construct_gray_profile)->Unit(benchmark::kMillisecond);

void BM_ricci_eigenvalues(benchmark::State& state) {
    const MetricProfile& p = gray_profile();
    for (auto _ : state) benchmark::DoNotOptimize(ricci_eigenvalues(p));
}
BENCHMARK(BM_ricci_eigenvalues)->Unit(benchmark::kMillisecond);

void BM_evaluator_query(benchmark::State& state) {
    auto ev = make_evaluator(gray_profile());
    double t = -0.9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ev->f(t));
        t = t < 0.9 ? t + 1e-4 : -0.9;
    }
}
BENCHMARK(BM_evaluator_query);

void BM_chart_ricci_point(benchmark::State& state) {
    const MetricProfile& p = gray_profile();
    ProfileFunctions fns = profile_functions(p);
    ChartGeometry chart = ChartGeometry::for_curvature(p.K, p.s);
    chart.c = 0.5;
    Vec4 q = chart.base_point;
    q[0] = 0.21;
    for (auto _ : state) benchmark::DoNotOptimize(chart_ricci(fns, chart, q));
}
BENCHMARK(BM_chart_ricci_point)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
