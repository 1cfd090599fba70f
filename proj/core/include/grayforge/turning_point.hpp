// Turning-point initial value problems: for a rate function Q with simple
// roots x0 < x1 and Q > 0 in between, the solution of
//     phi'' = Q'(phi)/2,  phi(0) = x1,  phi'(0) = 0
// satisfies (phi')^2 = Q(phi) and runs from x1 down to x0 in the half-period
// l, even at both turning points. The same integral is computed independently
// as l = integral of dQ^{-1/2} between the roots.
#pragma once

#include <functional>
#include <vector>

#include "grayforge/ode.hpp"

namespace grayforge {

struct TurningPointProblem {
    std::function<double(double)> Q;
    std::function<double(double)> dQ;
    double x0 = 0.0;  // lower simple root
    double x1 = 0.0;  // upper simple root

    void validate() const;  // throws std::invalid_argument on broken invariants
};

struct PeriodicSolution {
    TurningPointProblem problem;  // the generating problem, kept for re-evaluation
    std::vector<double> t;     // uniform grid on [0, l]
    std::vector<double> phi;   // descends from x1 to x0
    std::vector<double> dphi;  // velocities at the grid points
    double l = 0.0;            // half-period: first time phi reaches x0
    double ddphi_start = 0.0;  // phi''(0)  = Q'(x1)/2
    double ddphi_end = 0.0;    // phi''(l)  = Q'(x0)/2
    double energy_residual = 0.0;  // sup |dphi^2 - Q(phi)| over the grid
    double q_scale = 1.0;          // max |Q| between the roots, for normalizing the residual
};

/// Integrate the turning-point IVP from the upper root; detects the arrival
/// turning point (phi' = 0 with phi near x0), refines it with safeguarded
/// Newton on phi', and resamples the trajectory on a uniform grid hit exactly
/// by the integrator. Throws std::runtime_error if the trajectory leaves
/// [x0, x1] by more than a tolerance (sign error in Q).
PeriodicSolution integrate_turning_ivp(const TurningPointProblem& problem,
                                       int grid_points = 2001, const OdeOptions& opts = {});

/// Half-period by quadrature between the roots (independent of the ODE route).
double period_quadrature(const TurningPointProblem& problem);

/// Half-domain length of the symmetric construction: the integral of
/// dh / sqrt(z0(h/s)) for h from 0 to s*x, where z0 > 0 on [0, x) with a
/// simple root at x. Agrees with half of the ODE half-period for even z0.
double half_period(const std::function<double(double)>& z0, double s, double x);

}  // namespace grayforge
