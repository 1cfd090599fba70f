// Adaptive embedded Runge-Kutta integration (Dormand-Prince 5(4)) for the
// two-dimensional phase flows used by the profile constructions.
#pragma once

#include <array>
#include <functional>
#include <limits>

namespace grayforge {

using State2 = std::array<double, 2>;
using Rhs2 = std::function<State2(double, const State2&)>;

struct OdeOptions {
    double atol = 1e-11;
    double rtol = 1e-11;
    double h_init = 1e-4;
    double h_max = std::numeric_limits<double>::infinity();
    long max_steps = 5'000'000;
};

/// Integrate y' = rhs(t, y) from (t0, y0) to t1 (t1 >= t0) and return y(t1).
/// The final step is shortened so the integrator lands on t1 exactly.
State2 integrate_to(const Rhs2& rhs, double t0, State2 y0, double t1,
                    const OdeOptions& opts = {});

/// Step-by-step driver: invokes observer(t_prev, y_prev, t_next, y_next) after
/// every accepted step until it returns false or t reaches t_limit.
void integrate_steps(const Rhs2& rhs, double t0, State2 y0, double t_limit,
                     const OdeOptions& opts,
                     const std::function<bool(double, const State2&, double, const State2&)>& observer);

}  // namespace grayforge
