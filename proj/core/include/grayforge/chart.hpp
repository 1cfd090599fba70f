// Chart-based curvature engine: assembles the full neutral 4-metric
//   dt^2 + f(t)^2 (dpsi + beta)^2 - g(t)^2 (constant-curvature base)
// in an explicit coordinate chart and differentiates it numerically
// (Christoffel symbols and Ricci by Richardson-extrapolated central
// differences). Completely independent of the closed-form eigenvalue route,
// which it is used to verify. Also hosts the tensorial checks: the cyclic
// Ricci condition nabla_X rho(X,X) = (X tau) g(X,X)/3 and the Killing
// property of S = Ric - (tau/3) Id.
#pragma once

#include <array>
#include <vector>

#include "grayforge/profile.hpp"
#include "grayforge/report.hpp"
#include "grayforge/ricci.hpp"

namespace grayforge {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;

/// Chart data; coordinates are q = (t, psi, b1, b2) with
///   K = -4 : half-plane b1 = x, b2 = y > 0, base = (dx^2 + dy^2)/(4 y^2),
///            beta = (c s / y) dx
///   K =  0 : flat chart, base = dx^2 + dy^2, beta = (c s x) dy
///   K = +4 : radius-1/2 sphere b1 = theta in (0, pi), b2 = phi,
///            base = (dtheta^2 + sin^2 theta dphi^2)/4, beta = (c s cos theta) dphi
/// The normalization c is calibrated once against the closed-form fiber
/// eigenvalue and then frozen.
struct ChartGeometry {
    double K = -4.0;
    double s = 0.0;
    double c = 1.0;
    Vec4 base_point{0.0, 0.3, 0.3, 0.8};  // (t placeholder, psi, b1, b2)

    static ChartGeometry for_curvature(double K, double s);
};

Mat4 chart_metric(const ProfileFunctions& fns, const ChartGeometry& chart, const Vec4& q);

struct ChartRicci {
    Mat4 ricci;  // lower indices
    double tau;
};
ChartRicci chart_ricci(const ProfileFunctions& fns, const ChartGeometry& chart, const Vec4& q);

/// Ricci eigenvalues read in the adapted frame {d/dt, fiber, two horizontal
/// lifts}, plus the largest off-diagonal Ricci entry in that frame (relative
/// to the eigenvalue scale).
struct FrameEigenvalues {
    double lam0 = 0.0, lam1 = 0.0, lam2a = 0.0, lam2b = 0.0;
    double tau = 0.0;
    double offdiag = 0.0;
};
FrameEigenvalues chart_frame_eigenvalues(const ProfileFunctions& fns, const ChartGeometry& chart,
                                         const Vec4& q);

/// Calibrate the connection constant c at one interior point by matching the
/// fiber eigenvalue lambda1_target (exact affine solve in c^2). Returns the
/// geometry with c frozen. For s = 0 the metric does not depend on c.
ChartGeometry calibrate_connection(const ProfileFunctions& fns, double K, double s,
                                   double t_sample, double lambda1_target);

/// Samples for the tensorial checks: (point, direction) pairs.
struct ChartSample {
    Vec4 q;
    Vec4 X;
};
std::vector<ChartSample> default_samples(const ProfileFunctions& fns, const ChartGeometry& chart,
                                         int n_points = 4);

/// Cyclic Ricci condition via finite differences of the chart Ricci tensor.
VerificationReport check_gray_tensorial(const ProfileFunctions& fns, const ChartGeometry& chart,
                                        const std::vector<ChartSample>& samples,
                                        double tol = 1e-4);

/// Killing property of S = Ric - (tau/3) Id: g(nabla_X S(X), X) = 0.
VerificationReport check_killing_tensor(const ProfileFunctions& fns, const ChartGeometry& chart,
                                        const std::vector<ChartSample>& samples,
                                        double tol = 1e-4);

/// Agreement of the closed-form eigenvalues with the chart engine at
/// n interior grid points after one-point calibration.
VerificationReport check_engine_agreement(const MetricProfile& profile, const RicciField& field,
                                          int n_points = 10, double tol = 1e-4);

}  // namespace grayforge
