// Tiny dense linear algebra: Gaussian elimination with partial pivoting for
// the n <= 4 systems appearing in the coefficient solves and chart engine.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace grayforge {

class SingularSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Solve A x = b in place; A is row-major n x n. Throws SingularSystemError
/// when a pivot falls below rel_tol times the matrix scale.
template <int N>
std::array<double, N> solve_linear(std::array<std::array<double, N>, N> A,
                                   std::array<double, N> b, double rel_tol = 1e-13) {
    double scale = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) scale = std::max(scale, std::abs(A[i][j]));
    if (scale == 0.0) throw SingularSystemError("solve_linear: zero matrix");

    for (int col = 0; col < N; ++col) {
        int piv = col;
        for (int r = col + 1; r < N; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        if (std::abs(A[piv][col]) < rel_tol * scale)
            throw SingularSystemError("solve_linear: rank-deficient system");
        if (piv != col) {
            std::swap(A[piv], A[col]);
            std::swap(b[piv], b[col]);
        }
        for (int r = col + 1; r < N; ++r) {
            double m = A[r][col] / A[col][col];
            if (m == 0.0) continue;
            for (int c = col; c < N; ++c) A[r][c] -= m * A[col][c];
            b[r] -= m * b[col];
        }
    }
    std::array<double, N> x{};
    for (int i = N - 1; i >= 0; --i) {
        double acc = b[i];
        for (int j = i + 1; j < N; ++j) acc -= A[i][j] * x[j];
        x[i] = acc / A[i][i];
    }
    return x;
}

/// Invert a 4x4 matrix by Gauss-Jordan with partial pivoting.
inline std::array<std::array<double, 4>, 4> invert4(std::array<std::array<double, 4>, 4> A) {
    std::array<std::array<double, 4>, 4> inv{};
    for (int i = 0; i < 4; ++i) inv[i][i] = 1.0;
    double scale = 0.0;
    for (auto& row : A)
        for (double v : row) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) throw SingularSystemError("invert4: zero matrix");
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        if (std::abs(A[piv][col]) < 1e-14 * scale) throw SingularSystemError("invert4: singular matrix");
        std::swap(A[piv], A[col]);
        std::swap(inv[piv], inv[col]);
        double d = A[col][col];
        for (int c = 0; c < 4; ++c) {
            A[col][c] /= d;
            inv[col][c] /= d;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            double m = A[r][col];
            if (m == 0.0) continue;
            for (int c = 0; c < 4; ++c) {
                A[r][c] -= m * A[col][c];
                inv[r][c] -= m * inv[col][c];
            }
        }
    }
    return inv;
}

}  // namespace grayforge
