#include "grayforge/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace grayforge {

namespace {

// Dormand-Prince 5(4) tableau (FSAL).
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// error weights: b - b* (5th minus embedded 4th order)
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

struct Stepper {
    const Rhs2& rhs;
    const OdeOptions& opts;
    double t;
    State2 y;
    State2 k1;  // FSAL cache
    double h;
    long steps = 0;

    Stepper(const Rhs2& r, double t0, const State2& y0, const OdeOptions& o)
        : rhs(r), opts(o), t(t0), y(y0), k1(r(t0, y0)), h(o.h_init) {}

    // One accepted step of size at most h_cap; on return t/y/k1 are advanced.
    void advance(double h_cap) {
        h = std::min({h, h_cap, opts.h_max});
        for (;;) {
            if (++steps > opts.max_steps) throw std::runtime_error("ode: step limit exceeded");
            State2 yt, k2, k3, k4, k5, k6, k7;
            for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * a21 * k1[i];
            k2 = rhs(t + c2 * h, yt);
            for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
            k3 = rhs(t + c3 * h, yt);
            for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            k4 = rhs(t + c4 * h, yt);
            for (int i = 0; i < 2; ++i)
                yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            k5 = rhs(t + c5 * h, yt);
            for (int i = 0; i < 2; ++i)
                yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
            k6 = rhs(t + h, yt);
            State2 y1;
            for (int i = 0; i < 2; ++i)
                y1[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
            k7 = rhs(t + h, y1);

            double err = 0.0;
            for (int i = 0; i < 2; ++i) {
                double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                e7 * k7[i]);
                double sc = opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(y1[i]));
                err += (e / sc) * (e / sc);
            }
            err = std::sqrt(0.5 * err);

            double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            factor = std::clamp(factor, 0.2, 5.0);
            if (err <= 1.0) {
                t += h;
                y = y1;
                k1 = k7;
                h = std::min(h * factor, opts.h_max);
                return;
            }
            h *= factor;
            if (h < 1e-15 * std::max(1.0, std::abs(t)))
                throw std::runtime_error("ode: step size underflow");
        }
    }
};

}  // namespace

State2 integrate_to(const Rhs2& rhs, double t0, State2 y0, double t1, const OdeOptions& opts) {
    if (t1 < t0) throw std::invalid_argument("integrate_to: t1 < t0");
    if (t1 == t0) return y0;
    Stepper st(rhs, t0, y0, opts);
    while (st.t < t1) {
        double remaining = t1 - st.t;
        if (remaining <= 1e-15 * std::max(1.0, std::abs(t1))) break;
        st.advance(remaining);
    }
    return st.y;
}

void integrate_steps(const Rhs2& rhs, double t0, State2 y0, double t_limit, const OdeOptions& opts,
                     const std::function<bool(double, const State2&, double, const State2&)>& observer) {
    Stepper st(rhs, t0, y0, opts);
    while (st.t < t_limit) {
        double t_prev = st.t;
        State2 y_prev = st.y;
        st.advance(t_limit - st.t);
        if (!observer(t_prev, y_prev, st.t, st.y)) return;
    }
}

}  // namespace grayforge
