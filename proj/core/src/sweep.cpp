#include "grayforge/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "grayforge/einstein.hpp"
#include "grayforge/gray_solver.hpp"
#include "grayforge/kahler.hpp"

namespace grayforge {

SweepResult sweep_einstein_count(int g_lo, int g_hi) {
    if (g_lo < 2 || g_hi < g_lo) throw std::invalid_argument("einstein-count: need 2 <= g_lo <= g_hi");
    SweepResult out;
    out.kind = "einstein-count";
    out.columns = {"genus", "count"};
    for (int g = g_lo; g <= g_hi; ++g)
        out.rows.push_back({static_cast<double>(g),
                            static_cast<double>(enumerate_einstein(g).size())});
    return out;
}

SweepResult sweep_eta(double tol) {
    EtaEstimate eta = eta_estimate(tol);
    if (!eta.converged) throw std::runtime_error("eta sweep: inner search inconclusive");
    SweepResult out;
    out.kind = "eta";
    out.columns = {"lo", "hi", "estimate"};
    out.rows.push_back({eta.lo, eta.hi, eta.value});
    return out;
}

SweepResult sweep_eps_s(const std::vector<double>& s_values, int eps) {
    SweepResult out;
    out.kind = "eps-s";
    out.columns = {"s", "eps_s"};
    for (double s : s_values) out.rows.push_back({s, eps_s(s, eps)});
    return out;
}

SweepResult sweep_kahler_window(double s_lo, double s_hi, int ns, double D_lo, double D_hi,
                                int nD) {
    if (ns < 1 || nD < 1) throw std::invalid_argument("kahler-window: grid sizes >= 1");
    SweepResult out;
    out.kind = "kahler-window";
    out.columns = {"s", "D", "feasible", "max_boundary_residual"};
    for (int i = 0; i < ns; ++i) {
        double s = ns > 1 ? s_lo + (s_hi - s_lo) * i / (ns - 1) : s_lo;
        for (int j = 0; j < nD; ++j) {
            double D = nD > 1 ? D_lo + (D_hi - D_lo) * j / (nD - 1) : D_lo;
            double feasible = 0.0, residual = 0.0;
            try {
                KahlerSpec spec = make_kahler_spec(s, D);
                VerificationReport r = kahler_boundary_residuals(spec);
                feasible = r.passed() ? 1.0 : 0.0;
                for (const auto& e : r.entries()) residual = std::max(residual, std::abs(e.value));
            } catch (const std::invalid_argument&) {
                feasible = 0.0;
                residual = 0.0;
            }
            out.rows.push_back({s, D, feasible, residual});
        }
    }
    return out;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string sweep_to_csv(const SweepResult& result) {
    std::string out;
    for (std::size_t i = 0; i < result.columns.size(); ++i) {
        if (i) out += ',';
        out += result.columns[i];
    }
    out += '\n';
    for (const auto& row : result.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += fmt(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string sweep_to_json(const SweepResult& result) {
    std::string out = "{\"kind\":\"" + result.kind + "\",\"columns\":[";
    for (std::size_t i = 0; i < result.columns.size(); ++i) {
        if (i) out += ',';
        out += '"' + result.columns[i] + '"';
    }
    out += "],\"rows\":[";
    for (std::size_t r = 0; r < result.rows.size(); ++r) {
        if (r) out += ',';
        out += '[';
        for (std::size_t i = 0; i < result.rows[r].size(); ++i) {
            if (i) out += ',';
            out += fmt(result.rows[r][i]);
        }
        out += ']';
    }
    out += "]}\n";
    return out;
}

}  // namespace grayforge
