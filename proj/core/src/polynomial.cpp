#include "grayforge/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace grayforge {

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
    return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (c_.empty() || o.c_.empty()) return Polynomial{};
    std::vector<double> r(c_.size() + o.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(r));
}

Polynomial Polynomial::scaled(double a) const {
    std::vector<double> r(c_);
    for (double& v : r) v *= a;
    return Polynomial(std::move(r));
}

double Polynomial::coeff_scale() const {
    double s = 0.0;
    for (double v : c_) s = std::max(s, std::abs(v));
    return s;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw std::invalid_argument("bisect_root: endpoints do not bracket");
    for (int it = 0; it < 200 && (hi - lo) > tol * std::max(1.0, std::abs(lo) + std::abs(hi)); ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

double refine_root(const std::function<double(double)>& f,
                   const std::function<double(double)>& df,
                   double lo, double hi, double tol) {
    double x = bisect_root(f, lo, hi, 1e-6);
    // Newton polish, clipped to the original bracket.
    for (int it = 0; it < 60; ++it) {
        double fx = f(x);
        double dfx = df(x);
        if (dfx == 0.0) break;
        double step = fx / dfx;
        double next = x - step;
        if (next < lo || next > hi) {
            next = bisect_root(f, lo, hi, tol);
            return next;
        }
        x = next;
        if (std::abs(step) <= tol * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

std::optional<double> first_sign_change(const std::function<double(double)>& f,
                                        double lo, double hi, int n) {
    double prev_t = lo, prev_f = f(lo);
    for (int i = 1; i <= n; ++i) {
        double t = lo + (hi - lo) * static_cast<double>(i) / n;
        double ft = f(t);
        if (prev_f == 0.0) return prev_t;
        if (prev_f * ft < 0.0) return bisect_root(f, prev_t, t);
        prev_t = t;
        prev_f = ft;
    }
    if (prev_f == 0.0) return prev_t;
    return std::nullopt;
}

std::vector<double> isolate_roots(const Polynomial& p, double lo, double hi, int n) {
    std::vector<double> roots;
    if (p.degree() <= 0 || hi <= lo) return roots;
    const Polynomial dp = p.derivative();
    auto f = [&](double t) { return p(t); };
    auto df = [&](double t) { return dp(t); };
    // Chebyshev nodes cluster near the endpoints where the interesting roots sit.
    std::vector<double> nodes(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        double theta = M_PI * static_cast<double>(n - i) / n;
        nodes[static_cast<std::size_t>(i)] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * std::cos(theta);
    }
    for (int i = 0; i < n; ++i) {
        double a = nodes[static_cast<std::size_t>(i)], b = nodes[static_cast<std::size_t>(i) + 1];
        double fa = p(a), fb = p(b);
        if (fa == 0.0) {
            if (roots.empty() || std::abs(roots.back() - a) > 1e-12) roots.push_back(a);
            continue;
        }
        if (fa * fb < 0.0) roots.push_back(refine_root(f, df, a, b));
    }
    if (!roots.empty()) {
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end(),
                                [&](double a, double b) { return std::abs(a - b) < 1e-11 * std::max(1.0, std::abs(b)); }),
                    roots.end());
    }
    return roots;
}

std::pair<double, double> minimize_on_interval(const std::function<double(double)>& f,
                                               double lo, double hi, int n) {
    double best_t = lo, best_f = f(lo);
    for (int i = 1; i <= n; ++i) {
        double theta = M_PI * static_cast<double>(n - i) / n;
        double t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * std::cos(theta);
        double ft = f(t);
        if (ft < best_f) {
            best_f = ft;
            best_t = t;
        }
    }
    // golden-section refinement around the best node
    double w = (hi - lo) / n;
    double a = std::max(lo, best_t - 2.0 * w), b = std::min(hi, best_t + 2.0 * w);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-13 * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        }
    }
    double t = 0.5 * (a + b), ft = f(t);
    if (ft < best_f) {
        best_f = ft;
        best_t = t;
    }
    return {best_t, best_f};
}

}  // namespace grayforge
