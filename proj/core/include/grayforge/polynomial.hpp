// Dense real polynomials and bracketing-based root isolation.
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace grayforge {

/// Polynomial with real coefficients, stored lowest degree first.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial zero() { return Polynomial{}; }

    /// Degree of the trimmed polynomial; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    double coeff(std::size_t k) const { return k < c_.size() ? c_[k] : 0.0; }
    const std::vector<double>& coeffs() const { return c_; }

    double operator()(double t) const {
        double acc = 0.0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial{};
        std::vector<double> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
        return Polynomial(std::move(d));
    }

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(double a) const;

    /// Largest |coefficient|; 0 for the zero polynomial.
    double coeff_scale() const;

private:
    void trim();
    std::vector<double> c_;  // c_[k] multiplies t^k
};

/// Refine a bracketed root of f to near machine precision (bisection, then
/// Newton polishing clipped to the bracket). Requires f(lo)*f(hi) <= 0.
double refine_root(const std::function<double(double)>& f,
                   const std::function<double(double)>& df,
                   double lo, double hi, double tol = 1e-14);

/// Bisection-only variant for functions without a cheap derivative.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol = 1e-14);

/// First sign change of f on [lo, hi], scanned on a uniform grid of n points,
/// refined by bisection. Returns nullopt if no sign change is found.
std::optional<double> first_sign_change(const std::function<double(double)>& f,
                                        double lo, double hi, int n = 4096);

/// All simple roots of p on [lo, hi] located by sign changes on a
/// Chebyshev-node scan refined by bisection + Newton.
std::vector<double> isolate_roots(const Polynomial& p, double lo, double hi, int n = 512);

/// Minimum of f over [lo, hi]: Chebyshev-node scan plus golden-section
/// refinement around the best node. Returns {argmin, min}.
std::pair<double, double> minimize_on_interval(const std::function<double(double)>& f,
                                               double lo, double hi, int n = 512);

}  // namespace grayforge
