#include "grayforge/turning_point.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "grayforge/quadrature.hpp"

namespace grayforge {

void TurningPointProblem::validate() const {
    if (!Q || !dQ) throw std::invalid_argument("TurningPointProblem: Q and dQ required");
    if (!(x1 > x0)) throw std::invalid_argument("TurningPointProblem: x1 > x0 required");
    const double range = x1 - x0;
    double qmax = 0.0;
    for (int i = 1; i < 64; ++i) {
        double u = x0 + range * i / 64.0;
        double q = Q(u);
        qmax = std::max(qmax, std::abs(q));
        if (!(q > 0.0)) throw std::invalid_argument("TurningPointProblem: Q must be positive between the roots");
    }
    if (std::abs(Q(x0)) > 1e-9 * std::max(1.0, qmax) || std::abs(Q(x1)) > 1e-9 * std::max(1.0, qmax))
        throw std::invalid_argument("TurningPointProblem: endpoints are not roots of Q");
    if (dQ(x0) <= 0.0 || dQ(x1) >= 0.0)
        throw std::invalid_argument("TurningPointProblem: roots must be simple with interior-positive slopes");
}

PeriodicSolution integrate_turning_ivp(const TurningPointProblem& problem, int grid_points,
                                  const OdeOptions& opts) {
    problem.validate();
    const double range = problem.x1 - problem.x0;
    const double exit_tol = 1e-7 * range;

    Rhs2 rhs = [&](double, const State2& y) -> State2 {
        return {y[1], 0.5 * problem.dQ(y[0])};
    };

    // Phase 1: locate the arrival turning point phi' = 0 near x0.
    // Time scale estimate from the quadrature keeps the search bounded.
    const double l_estimate = period_quadrature(problem);
    const double t_limit = 3.0 * l_estimate;

    double bracket_lo = 0.0, bracket_hi = -1.0;
    State2 state_at_lo{problem.x1, 0.0};
    bool armed = false;
    integrate_steps(rhs, 0.0, {problem.x1, 0.0}, t_limit, opts,
                    [&](double ta, const State2& ya, double tb, const State2& yb) {
                        if (yb[0] < problem.x0 - exit_tol || yb[0] > problem.x1 + exit_tol)
                            throw std::runtime_error("integrate_turning_ivp: trajectory left [x0, x1]");
                        if (!armed) {
                            // wait until the solution has clearly departed from the start
                            if (yb[1] < 0.0 && yb[0] < problem.x1 - 0.25 * range) armed = true;
                        }
                        if (armed && yb[1] >= 0.0) {
                            bracket_lo = ta;
                            bracket_hi = tb;
                            state_at_lo = ya;
                            return false;
                        }
                        return true;
                    });
    if (bracket_hi < bracket_lo)
        throw std::runtime_error("integrate_turning_ivp: turning point not reached");

    // Phase 2: refine l by safeguarded Newton on phi'(t), re-integrating from
    // the bracketing step start each time (phi'' = Q'(phi)/2 is known).
    auto dphi_at = [&](double t) {
        State2 y = integrate_to(rhs, bracket_lo, state_at_lo, t, opts);
        return y;
    };
    double lo = bracket_lo, hi = bracket_hi;
    double t_turn = 0.5 * (lo + hi);
    for (int it = 0; it < 80; ++it) {
        State2 y = dphi_at(t_turn);
        double v = y[1];
        double acc = 0.5 * problem.dQ(y[0]);
        if (v < 0.0)
            lo = t_turn;
        else
            hi = t_turn;
        double next = acc != 0.0 ? t_turn - v / acc : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - t_turn) < 1e-15 * std::max(1.0, t_turn)) {
            t_turn = next;
            break;
        }
        t_turn = next;
    }
    const double l = t_turn;

    // Phase 3: resample on a uniform grid, landing on every node exactly.
    PeriodicSolution sol;
    sol.problem = problem;
    sol.l = l;
    sol.t.resize(static_cast<std::size_t>(grid_points));
    sol.phi.resize(static_cast<std::size_t>(grid_points));
    sol.dphi.resize(static_cast<std::size_t>(grid_points));
    State2 y{problem.x1, 0.0};
    double t = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        double ti = l * static_cast<double>(i) / (grid_points - 1);
        y = integrate_to(rhs, t, y, ti, opts);
        t = ti;
        sol.t[static_cast<std::size_t>(i)] = ti;
        sol.phi[static_cast<std::size_t>(i)] = y[0];
        sol.dphi[static_cast<std::size_t>(i)] = y[1];
    }
    sol.ddphi_start = 0.5 * problem.dQ(problem.x1);
    sol.ddphi_end = 0.5 * problem.dQ(problem.x0);

    double qmax = 0.0;
    for (int i = 0; i < 256; ++i) qmax = std::max(qmax, std::abs(problem.Q(problem.x0 + range * i / 255.0)));
    double res = 0.0;
    for (std::size_t i = 0; i < sol.phi.size(); ++i)
        res = std::max(res, std::abs(sol.dphi[i] * sol.dphi[i] - problem.Q(sol.phi[i])));
    sol.energy_residual = res;
    sol.q_scale = qmax;
    return sol;
}

double period_quadrature(const TurningPointProblem& problem) {
    return period_integral(problem.Q, problem.x0, problem.x1, true, true);
}

double half_period(const std::function<double(double)>& z0, double s, double x) {
    if (!(s > 0.0) || !(x > 0.0)) throw std::invalid_argument("half_period: s > 0 and x > 0 required");
    auto Q = [&](double h) { return z0(h / s); };
    return period_integral(Q, 0.0, s * x, false, true);
}

}  // namespace grayforge
