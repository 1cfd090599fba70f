#include "grayforge/gridfd.hpp"

#include <algorithm>
#include <stdexcept>

namespace grayforge {

std::vector<double> fd_weights(double z, const std::vector<double>& x, int m) {
    const int n = static_cast<int>(x.size());
    if (n < m + 1) throw std::invalid_argument("fd_weights: need at least m+1 nodes");
    // Fornberg's recurrence; c[j][k] = weight of node j for the k-th derivative.
    std::vector<std::vector<double>> c(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0));
    c[0][0] = 1.0;
    double c1 = 1.0;
    double c4 = x[0] - z;
    for (int i = 1; i < n; ++i) {
        int mn = std::min(i, m);
        double c2 = 1.0;
        double c5 = c4;
        c4 = x[static_cast<std::size_t>(i)] - z;
        for (int j = 0; j < i; ++j) {
            double c3 = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                        c1 * (k * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] -
                              c5 * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k)]) /
                        c2;
                c[static_cast<std::size_t>(i)][0] = -c1 * c5 * c[static_cast<std::size_t>(i - 1)][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                    (c4 * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] -
                     k * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k - 1)]) /
                    c3;
            c[static_cast<std::size_t>(j)][0] = c4 * c[static_cast<std::size_t>(j)][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)];
    return w;
}

double grid_derivative(const std::vector<double>& values, std::size_t i, double dt, int m,
                       int width) {
    const std::size_t n = values.size();
    if (n < static_cast<std::size_t>(width)) throw std::invalid_argument("grid_derivative: grid too small");
    std::size_t half = static_cast<std::size_t>(width) / 2;
    std::size_t lo = i > half ? i - half : 0;
    lo = std::min(lo, n - static_cast<std::size_t>(width));
    std::vector<double> nodes(static_cast<std::size_t>(width));
    for (int j = 0; j < width; ++j)
        nodes[static_cast<std::size_t>(j)] =
            (static_cast<double>(lo + static_cast<std::size_t>(j)) - static_cast<double>(i)) * dt;
    auto w = fd_weights(0.0, nodes, m);
    double acc = 0.0;
    for (int j = 0; j < width; ++j) acc += w[static_cast<std::size_t>(j)] * values[lo + static_cast<std::size_t>(j)];
    return acc;
}

}  // namespace grayforge
