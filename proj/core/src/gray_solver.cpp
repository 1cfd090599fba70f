#include "grayforge/gray_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "grayforge/linear.hpp"

namespace grayforge {

namespace {

void check_eps(int eps) {
    if (eps < -1 || eps > 1) throw std::invalid_argument("eps must be one of {-1, 0, 1}");
}

// Basis polynomials multiplying C, D, E in the numerator P, plus the eps part:
// P(t) = C aC(t) + D aD(t) + E t - 4 eps (t^2 + 1).
double aC(double t) {
    double t2 = t * t;
    return -t2 * t2 / 3.0 + 2.0 * t2 + 1.0;
}
double aD(double t) {
    double t2 = t * t;
    return -t2 * t2 * t2 / 5.0 + t2 * t2 - 3.0 * t2 - 1.0;
}
double aCp(double t) { return -4.0 * t * t * t / 3.0 + 4.0 * t; }
double aDp(double t) {
    double t2 = t * t;
    return -6.0 * t2 * t2 * t / 5.0 + 4.0 * t2 * t - 6.0 * t;
}

}  // namespace

Coefficients Coefficients::from_normalized(double C, double D, double E, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("Coefficients: s > 0 required");
    Coefficients k;
    k.s = s;
    k.C_norm = C;
    k.D_norm = D;
    k.E_norm = E;
    k.C_raw = C / (s * s);
    k.D_raw = D / (s * s * s * s);
    k.E_raw = E * s;
    return k;
}

Coefficients Coefficients::from_raw(double C, double D, double E, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("Coefficients: s > 0 required");
    Coefficients k;
    k.s = s;
    k.C_raw = C;
    k.D_raw = D;
    k.E_raw = E;
    k.C_norm = C * s * s;
    k.D_norm = D * s * s * s * s;
    k.E_norm = E / s;
    return k;
}

double ProfilePolynomial::z0(double t) const {
    double denom = 1.0 - t * t;
    if (std::abs(denom) < 1e-14) throw std::domain_error("z0: pole at t = +-1");
    return P(t) / denom;
}

std::function<double(double)> ProfilePolynomial::z0_function() const {
    Polynomial p = P;
    return [p](double t) { return p(t) / (1.0 - t * t); };
}

std::function<double(double)> ProfilePolynomial::z0_derivative_function() const {
    Polynomial p = P;
    Polynomial dp = P.derivative();
    return [p, dp](double t) {
        double denom = 1.0 - t * t;
        return (dp(t) * denom + 2.0 * t * p(t)) / (denom * denom);
    };
}

void BoundaryPair::validate() const {
    if (branch != -1 && branch != 1) throw std::invalid_argument("BoundaryPair: branch must be -1 or +1");
    if (!(y < x)) throw std::invalid_argument("BoundaryPair: y < x required");
    if (branch == -1) {
        if (!(x > -1.0 && x < 1.0 && y > -1.0 && y < 1.0))
            throw std::invalid_argument("BoundaryPair: branch -1 requires x, y in (-1, 1)");
    } else {
        if (!(y > 1.0)) throw std::invalid_argument("BoundaryPair: branch +1 requires 1 < y < x");
    }
}

double z0_eval(const Coefficients& coeffs, int eps, double t) {
    check_eps(eps);
    double denom = 1.0 - t * t;
    if (std::abs(denom) < 1e-14) throw std::domain_error("z0_eval: t = +-1 is a pole of the rational form");
    double t2 = t * t, t4 = t2 * t2, t6 = t4 * t2;
    double num = -4.0 * eps * (1.0 + t2) + coeffs.D_norm * (-t6 / 5.0 + t4 - 3.0 * t2 - 1.0) +
                 coeffs.C_norm * (-t4 / 3.0 + 2.0 * t2 + 1.0) + coeffs.E_norm * t;
    return num / denom;
}

ProfilePolynomial p_poly(const Coefficients& coeffs, int eps) {
    check_eps(eps);
    const double C = coeffs.C_norm, D = coeffs.D_norm, E = coeffs.E_norm;
    ProfilePolynomial out;
    out.eps = eps;
    out.P = Polynomial({-4.0 * eps + C - D,     // t^0
                        E,                      // t^1
                        -4.0 * eps + 2.0 * C - 3.0 * D,
                        0.0,
                        D - C / 3.0,
                        0.0,
                        -D / 5.0});
    return out;
}

SolvedCD solve_CD(double x, double E, double s, int eps) {
    check_eps(eps);
    const double x2 = x * x, x3 = x2 * x, x4 = x2 * x2, x5 = x4 * x, x6 = x4 * x2;
    const double quartic = 15.0 + 10.0 * x2 - x4;
    const double denom = 2.0 * (x - 1.0) * x * (x + 1.0) * quartic;
    if (std::abs(x) < 1e-9 || std::abs(x2 - 1.0) < 1e-9 || std::abs(quartic) < 1e-9)
        throw DegenerateParameterError("solve_CD: singular denominator (x near 0, +-1, or quartic root)");

    SolvedCD out;
    out.D_norm = 5.0 *
                 (-3.0 * E - 6.0 * s - 24.0 * eps * x + 3.0 * E * x2 - 12.0 * s * x2 -
                  8.0 * eps * x3 + 2.0 * s * x4) /
                 denom;
    out.C_norm = 3.0 *
                 (5.0 * E + 10.0 * s + 80.0 * eps * x + 30.0 * s * x2 - 10.0 * E * x2 +
                  5.0 * E * x4 - 10.0 * s * x4 - 16.0 * eps * x5 + 2.0 * s * x6) /
                 (-denom);
    return out;
}

namespace {

// Shared 3x3 solve behind solve_CDE_pair / pair_residual: unknowns (C, D, E)
// from P(y) = 0, P(x) = 0, P'(x) = -2s(1 - x^2).
struct PairSolve {
    double C, D, E;
    double residual;  // |P'(y) - 2s(1 - y^2)|
};

PairSolve solve_pair_system(const BoundaryPair& pair, double s, int eps) {
    const double x = pair.x, y = pair.y;
    std::array<std::array<double, 3>, 3> A{{{aC(y), aD(y), y},
                                            {aC(x), aD(x), x},
                                            {aCp(x), aDp(x), 1.0}}};
    std::array<double, 3> b{4.0 * eps * (y * y + 1.0),
                            4.0 * eps * (x * x + 1.0),
                            -2.0 * s * (1.0 - x * x) + 8.0 * eps * x};
    auto sol = solve_linear<3>(A, b);
    PairSolve out{sol[0], sol[1], sol[2], 0.0};
    double dPy = out.C * aCp(y) + out.D * aDp(y) + out.E - 8.0 * eps * y;
    out.residual = std::abs(dPy - 2.0 * s * (1.0 - y * y));
    return out;
}

}  // namespace

std::optional<Coefficients> solve_CDE_pair(const BoundaryPair& pair, double s, int eps) {
    check_eps(eps);
    pair.validate();
    if (!(s > 0.0)) throw std::invalid_argument("solve_CDE_pair: s > 0 required");
    PairSolve ps = solve_pair_system(pair, s, eps);
    double scale = std::max({1.0, std::abs(ps.C), std::abs(ps.D), std::abs(ps.E)});
    if (ps.residual > 1e-8 * scale) return std::nullopt;
    return Coefficients::from_normalized(ps.C, ps.D, ps.E, s);
}

double pair_residual(const BoundaryPair& pair, double s, int eps) {
    return solve_pair_system(pair, s, eps).residual;
}

double g_function(double x, double y, double s, int eps) {
    const double x2 = x * x, x3 = x2 * x, y2 = y * y, y3 = y2 * y;
    return -4.0 * eps * (-5.0 * x + x3 + 5.0 * y + 2.0 * x2 * y - 2.0 * x * y2 - y3) +
           s * (5.0 + 2.0 * x3 * y + 2.0 * x * y3 + 3.0 * y2 + 3.0 * x2 + x2 * y2 - 16.0 * x * y);
}

double compatibility_lhs(double x, double y, double s, int eps) {
    check_eps(eps);
    return (x + y) * g_function(x, y, s, eps);
}

GPartials g_partials(double x, double y, double s, int eps) {
    check_eps(eps);
    const double x2 = x * x, x3 = x2 * x, y2 = y * y, y3 = y2 * y;
    GPartials out;
    out.Gx = -4.0 * eps * (-5.0 + 3.0 * x2 + 4.0 * x * y - 2.0 * y2) +
             2.0 * s * (3.0 * x2 * y + x * y2 + 3.0 * x - 8.0 * y + y3);
    out.Gy = -4.0 * eps * (5.0 + 2.0 * x2 - 4.0 * x * y - 3.0 * y2) +
             2.0 * s * (x3 + 3.0 * x * y2 + 3.0 * y + x2 * y - 8.0 * x);
    return out;
}

ProfilePolynomial symmetric_p(double x, double s, int eps) {
    check_eps(eps);
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("symmetric_p: x in (0, 1) required");
    const double x2 = x * x, x3 = x2 * x, x4 = x2 * x2, x6 = x4 * x2;
    const double den = x * (15.0 - 5.0 * x2 - 11.0 * x4 + x6);
    if (std::abs(den) < 1e-9) throw DegenerateParameterError("symmetric_p: singular denominator");

    // inner bracket a0 + a2 t^2 + a4 t^4, multiplied by (t^2 - x^2)
    const double a0 = s * (-15.0 + 10.0 * x2 - 3.0 * x4) + 4.0 * eps * x3 * (x2 - 5.0);
    const double a2 = s * (10.0 + 12.0 * x2 - 6.0 * x4) + 4.0 * eps * x * (5.0 + 2.0 * x2 + x4);
    const double a4 = s * (-3.0 - 6.0 * x2 + x4) - 4.0 * eps * x * (3.0 + x2);

    ProfilePolynomial out;
    out.eps = eps;
    out.provenance = PolyProvenance::SymmetricClosedForm;
    out.P = Polynomial({-x2 * a0 / den, 0.0, (a0 - x2 * a2) / den, 0.0, (a2 - x2 * a4) / den, 0.0,
                        a4 / den});
    return out;
}

double eps_s(double s, int eps) {
    check_eps(eps);
    if (!(s > 0.0)) throw std::invalid_argument("eps_s: s > 0 required");
    if (eps >= 0 || s >= 2.0) return 1.0;
    // first positive root of -4u^3(u^2 - 5) + s(-15 + 10u^2 - 3u^4) on (0, 1)
    Polynomial q({-15.0 * s, 0.0, 10.0 * s, 20.0, -3.0 * s, -4.0});
    auto roots = isolate_roots(q, 1e-9, 1.0, 2048);
    if (roots.empty()) throw std::runtime_error("eps_s: bracketing failed on (0, 1) for s < 2");
    return roots.front();
}

bool positivity_check(const ProfilePolynomial& poly, const BoundaryPair& pair) {
    pair.validate();
    const double x = pair.x, y = pair.y;
    const double width = x - y;
    const Polynomial& P = poly.P;
    const Polynomial dP = P.derivative();
    const double scale = std::max(1.0, P.coeff_scale());

    // endpoints must be (near-)roots, simple, with the inward slope sign that
    // makes z0 enter positively
    if (std::abs(P(x)) > 1e-7 * scale || std::abs(P(y)) > 1e-7 * scale) return false;
    if (std::abs(dP(x)) < 1e-8 || std::abs(dP(y)) < 1e-8) return false;
    auto z0_slope = [&](double r) { return dP(r) / (1.0 - r * r); };
    if (!(z0_slope(y) > 0.0) || !(z0_slope(x) < 0.0)) return false;

    const double inset = 1e-6 * width;
    const double lo = y + inset, hi = x - inset;
    if (!(hi > lo)) return false;

    // no interior sign changes of P, and z0 strictly positive at the minimum
    if (!isolate_roots(P, lo, hi).empty()) return false;
    auto z0 = poly.z0_function();
    auto [tmin, zmin] = minimize_on_interval(z0, lo, hi, 512);
    (void)tmin;
    return zmin > 0.0;
}

std::optional<BoundaryPair> find_asymmetric_pair(double s, double x_hint) {
    const int eps = -1;
    const double edge = 0.985;
    auto line = [&](double u) { return g_function(u, -u, s, eps); };

    auto scan_box = [&](double x_lo, double x_hi, int nx, int ny) -> std::optional<BoundaryPair> {
        x_lo = std::max(x_lo, -edge);
        x_hi = std::min(x_hi, edge);
        for (int i = 0; i <= nx; ++i) {
            double x = x_lo + (x_hi - x_lo) * i / nx;
            double y_hi = x - 1e-5;
            double y_lo = -edge;
            if (y_hi <= y_lo) continue;
            double prev_y = y_lo, prev_g = g_function(x, prev_y, s, eps);
            for (int j = 1; j <= ny; ++j) {
                double yj = y_lo + (y_hi - y_lo) * j / ny;
                double gj = g_function(x, yj, s, eps);
                if (prev_g * gj < 0.0) {
                    double y = bisect_root([&](double yy) { return g_function(x, yy, s, eps); },
                                           prev_y, yj);
                    if (std::abs(x + y) > 1e-4) {
                        BoundaryPair pair{x, y, -1};
                        auto coeffs = solve_CDE_pair(pair, s, eps);
                        if (coeffs) {
                            ProfilePolynomial poly = p_poly(*coeffs, eps);
                            poly.provenance = PolyProvenance::EndpointSolve;
                            if (positivity_check(poly, pair)) return pair;
                        }
                    }
                }
                prev_y = yj;
                prev_g = gj;
            }
        }
        return std::nullopt;
    };

    if (x_hint != 0.0) {
        auto found = scan_box(x_hint - 0.2, x_hint + 0.2, 800, 1200);
        if (found) return found;
    }
    // focus on the minimum of G along the symmetric line, where the zero set
    // of G shrinks as s approaches the threshold
    auto [xm, gm] = minimize_on_interval(line, 0.0, edge, 512);
    (void)gm;
    auto found = scan_box(xm - 0.3, xm + 0.3, 1200, 1200);
    if (found) return found;
    // coarse full-range fallback (relevant for small s where solutions are plentiful)
    return scan_box(-edge, edge, 400, 600);
}

EtaEstimate eta_estimate(double tol) {
    auto feasible = [&](double s) { return find_asymmetric_pair(s).has_value(); };
    double lo = 2.0, hi = 2.1;
    EtaEstimate out;
    if (!feasible(lo) || feasible(hi)) {
        // widen once; if still inconclusive, report non-convergence
        lo = 1.9;
        hi = 2.2;
        if (!feasible(lo) || feasible(hi)) {
            out.converged = false;
            out.lo = lo;
            out.hi = hi;
            out.value = 0.5 * (lo + hi);
            return out;
        }
    }
    while (hi - lo > 2.0 * tol) {
        double mid = 0.5 * (lo + hi);
        if (feasible(mid))
            lo = mid;
        else
            hi = mid;
    }
    out.lo = lo;
    out.hi = hi;
    out.value = 0.5 * (lo + hi);
    out.converged = true;
    return out;
}

}  // namespace grayforge
