// Parameter sweeps backed by the pure construction/solver routines, with
// CSV and JSON emitters carrying identical numeric content.
#pragma once

#include <string>
#include <vector>

namespace grayforge {

struct SweepResult {
    std::string kind;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// (genus, member count) for each genus in [g_lo, g_hi]; the count comes from
/// the actual root-existence sweep, not the closed form.
SweepResult sweep_einstein_count(int g_lo, int g_hi);

/// One row: (lo, hi, estimate) bracketing the asymmetric-solution threshold.
SweepResult sweep_eta(double tol = 1e-5);

/// (s, eps_s) over the given s values.
SweepResult sweep_eps_s(const std::vector<double>& s_values, int eps);

/// (s, D, feasible, max boundary residual) over a rectangular grid.
SweepResult sweep_kahler_window(double s_lo, double s_hi, int ns, double D_lo, double D_hi,
                                int nD);

std::string sweep_to_csv(const SweepResult& result);
std::string sweep_to_json(const SweepResult& result);

}  // namespace grayforge
