// Finite-difference weights on arbitrary nodes (Fornberg's recurrence) and
// the uniform-grid stencils derived from them.
#pragma once

#include <vector>

namespace grayforge {

/// Weights w such that sum_j w[j] f(x[j]) approximates the m-th derivative of
/// f at z, exact for polynomials of degree < x.size().
std::vector<double> fd_weights(double z, const std::vector<double>& x, int m);

/// m-th derivative of uniformly sampled values at index i, spacing dt, using
/// a centered (or one-sided near the edges) stencil of the given width.
double grid_derivative(const std::vector<double>& values, std::size_t i, double dt, int m,
                       int width = 7);

}  // namespace grayforge
