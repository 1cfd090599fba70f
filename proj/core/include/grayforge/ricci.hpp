// Closed-form Ricci eigenvalues of the cohomogeneity-one ansatz
//   dt^2 + f(t)^2 theta^2 - g(t)^2 (base of curvature K):
//   lambda0 = -2 g''/g - f''/f                      (radial direction)
//   lambda1 = -f''/f - 2 f'g'/(fg) + 2 s^2 f^2/g^4  (fiber direction)
//   lambda2 = -g''/g - f'g'/(fg) - (g'/g)^2 - 2 s^2 f^2/g^4 - K/g^2
// computed from dense samples by high-order finite differences, with
// one-sided limits at the endpoints where f vanishes.
#pragma once

#include <vector>

#include "grayforge/profile.hpp"
#include "grayforge/report.hpp"

namespace grayforge {

struct RicciField {
    std::vector<double> lambda0, lambda1, lambda2;
    std::vector<double> tau;     // lambda0 + lambda1 + 2 lambda2
    std::vector<double> lambda;  // (lambda0 + lambda1)/2, the double eigenvalue
    std::vector<double> mu;      // lambda2
    std::vector<char> trusted;   // 1 where the ratio terms are well-conditioned
    double scale = 1.0;          // max |eigenvalue| over trusted points

    std::size_t size() const { return lambda0.size(); }
};

RicciField ricci_eigenvalues(const MetricProfile& profile);

/// The four equivalent certificates of the bi-Hermitian structure:
/// (i) lambda0 = lambda1, (ii) lambda - 2 mu constant, (iii) mu fits
/// D_raw g^2 - C_raw, (iv) mu' = 2 (lambda - mu) g'/g.
VerificationReport check_gray_1d(const RicciField& field, const MetricProfile& profile,
                                 double tol = 1e-6);

/// Einstein certificate: all three eigenvalues equal, tau = 4 lambda0.
VerificationReport check_einstein(const RicciField& field, double tol = 1e-6);

/// Least-squares fit mu ~ D g^2 - C over the trusted interior.
struct MuFit {
    double D_raw = 0.0;
    double C_raw = 0.0;
    double residual = 0.0;  // max |mu - fit|
};
MuFit fit_mu_relation(const RicciField& field, const MetricProfile& profile);

}  // namespace grayforge
