// End-to-end constructions of the bi-Hermitian families on the ruled surface
// of given genus and Chern number: the one-parameter symmetric family
// x in (0, eps_s) and the asymmetric family (eps = -1, genus >= 2).
#pragma once

#include <optional>

#include "grayforge/profile.hpp"

namespace grayforge {

/// Symmetric family member (y = -x, E = 0) at endpoint x in (0, eps_s).
/// Throws std::invalid_argument / std::domain_error with the failing
/// certificate named.
MetricProfile gray_symmetric_profile(int genus, int k, double x);

/// Asymmetric family member (E != 0), genus >= 2 so eps = -1. If y is not
/// supplied it is located on the zero set of the compatibility factor.
MetricProfile gray_asymmetric_profile(int genus, int k, double x,
                                      std::optional<double> y = std::nullopt);

}  // namespace grayforge
