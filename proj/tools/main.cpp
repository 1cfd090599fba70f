// grayforge: construct cohomogeneity-one neutral metrics on ruled surfaces
// and verify them against the independent curvature engines.
//
// Exit codes: 0 success / all checks pass, 1 I/O or malformed input,
// 2 infeasible construction parameters, 3 verification failure.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grayforge/chart.hpp"
#include "grayforge/einstein.hpp"
#include "grayforge/families.hpp"
#include "grayforge/io.hpp"
#include "grayforge/kahler.hpp"
#include "grayforge/product.hpp"
#include "grayforge/ricci.hpp"
#include "grayforge/sweep.hpp"

namespace {

using namespace grayforge;

double tolerance_scale() {
    const char* env = std::getenv("GRAYFORGE_TOLERANCE_SCALE");
    if (!env) return 1.0;
    try {
        double v = std::stod(env);
        if (v > 0.0) return v;
    } catch (...) {
    }
    std::cerr << "warning: ignoring invalid GRAYFORGE_TOLERANCE_SCALE\n";
    return 1.0;
}

struct Tolerances {
    std::map<std::string, double> values{
        {"boundary-value", 1e-6},  {"boundary-derivative", 1e-5}, {"parity", 1e-6},
        {"gray-1d", 1e-6},         {"einstein", 1e-6},            {"gray-tensorial", 1e-4},
        {"killing-tensor", 1e-4},  {"engine-agreement", 1e-4},
    };

    void apply_overrides(const std::vector<std::string>& overrides) {
        for (const auto& item : overrides) {
            auto pos = item.find('=');
            if (pos == std::string::npos)
                throw CLI::ValidationError("--tolerance expects name=value");
            std::string name = item.substr(0, pos);
            if (!values.count(name))
                throw CLI::ValidationError("unknown tolerance name: " + name);
            values[name] = std::stod(item.substr(pos + 1));
        }
    }
    double get(const std::string& name) const { return values.at(name) * tolerance_scale(); }
};

int write_outputs(const MetricProfile& profile, const std::string& out,
                  const std::string& csv_out) {
    try {
        if (!out.empty()) write_profile_file(profile, out);
        if (!csv_out.empty()) {
            RicciField field = ricci_eigenvalues(profile);
            write_profile_csv(profile, field, csv_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int run_construct(const std::string& family, int genus, int k, double x,
                  std::optional<double> y, double s, double D, double alpha,
                  const std::string& out, const std::string& csv_out) {
    MetricProfile profile;
    try {
        if (family == "gray-symmetric") {
            profile = gray_symmetric_profile(genus, k, x);
        } else if (family == "gray-asymmetric") {
            profile = gray_asymmetric_profile(genus, k, x, y);
        } else if (family == "einstein") {
            profile = einstein_profile(einstein_spec(genus, k));
        } else if (family == "kahler") {
            double s_eff = s;
            if (s_eff <= 0.0 && genus >= 2 && k >= 1)
                s_eff = static_cast<double>(k) / (genus - 1);
            KahlerSpec spec = make_kahler_spec(s_eff, D);
            profile = kahler_profile(spec);
            if (genus >= 2) profile.params = derive_params(genus, k, 0);
        } else if (family == "product") {
            profile = product_profile(make_product_spec(alpha));
            profile.params = derive_params(genus >= 2 ? genus : 2, 0, 1);
        } else {
            std::cerr << "error: unknown family " << family << "\n";
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    }
    int rc = write_outputs(profile, out, csv_out);
    if (rc != 0) return rc;
    std::cout << "constructed " << profile.family_tag << " profile on [-a, a], a = " << profile.a
              << ", grid " << profile.size() << "\n";
    return 0;
}

VerificationReport guarded(const std::string& name,
                           const std::function<VerificationReport()>& run) {
    try {
        return run();
    } catch (const std::exception& e) {
        VerificationReport r(name);
        r.add_flag(std::string("exception: ") + e.what(), false);
        return r;
    }
}

int run_verify(const std::string& path, std::vector<std::string> checks,
               const std::vector<std::string>& overrides, const std::string& report_path) {
    Tolerances tol;
    try {
        tol.apply_overrides(overrides);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    MetricProfile profile;
    try {
        profile = read_profile_file(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (checks.empty()) {
        checks = {"boundary", "parity", "gray-1d", "engine-agreement", "gray-tensorial",
                  "killing-tensor"};
        if (profile.family_tag == "einstein") checks.push_back("einstein");
    }

    RicciField field;
    bool have_field = false;
    auto ensure_field = [&]() {
        if (!have_field) {
            field = ricci_eigenvalues(profile);
            have_field = true;
        }
    };

    VerificationReport combined("verify:" + path);
    for (const auto& check : checks) {
        VerificationReport r(check);
        if (check == "boundary") {
            r = guarded(check, [&] {
                return check_boundary(profile, tol.get("boundary-value"),
                                      tol.get("boundary-derivative"));
            });
        } else if (check == "parity") {
            r = guarded(check, [&] { return check_parity(profile, tol.get("parity")); });
        } else if (check == "gray-1d") {
            r = guarded(check, [&] {
                ensure_field();
                return check_gray_1d(field, profile, tol.get("gray-1d"));
            });
        } else if (check == "einstein") {
            r = guarded(check, [&] {
                ensure_field();
                return check_einstein(field, tol.get("einstein"));
            });
        } else if (check == "engine-agreement") {
            r = guarded(check, [&] {
                ensure_field();
                return check_engine_agreement(profile, field, 10, tol.get("engine-agreement"));
            });
        } else if (check == "gray-tensorial" || check == "killing-tensor") {
            r = guarded(check, [&] {
                ensure_field();
                ProfileFunctions fns = profile_functions(profile);
                std::size_t mid = profile.size() / 2;
                ChartGeometry chart = calibrate_connection(fns, profile.K, profile.s,
                                                           profile.t_grid[mid],
                                                           field.lambda1[mid]);
                auto samples = default_samples(fns, chart, 4);
                return check == "gray-tensorial"
                           ? check_gray_tensorial(fns, chart, samples, tol.get("gray-tensorial"))
                           : check_killing_tensor(fns, chart, samples, tol.get("killing-tensor"));
            });
        } else {
            std::cerr << "error: unknown check " << check << "\n";
            return 1;
        }
        for (const auto& e : r.entries()) {
            const std::string name = check + ": " + e.name;
            if (e.informational)
                combined.add_informational(name, e.value, e.tolerance);
            else
                combined.add(name, e.value, e.tolerance);
        }
    }

    std::string json = report_to_json(combined);
    if (report_path.empty()) {
        std::cout << json;
    } else {
        std::ofstream file(report_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot write " << report_path << "\n";
            return 1;
        }
        file << json;
    }
    return combined.passed() ? 0 : 3;
}

int emit_sweep(const SweepResult& result, const std::string& format, const std::string& out) {
    std::string text = format == "json" ? sweep_to_json(result) : sweep_to_csv(result);
    if (out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream file(out, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot write " << out << "\n";
        return 1;
    }
    file << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cohomogeneity-one neutral metrics on ruled surfaces: construct, verify, sweep"};
    app.require_subcommand(1);

    // construct
    std::string family, out, csv_out;
    int genus = 0, k = 1;
    double x = 0.5, s = 0.0, D = 2.0, alpha = 2.0;
    std::optional<double> y;
    auto* construct = app.add_subcommand("construct", "build a profile and write it to disk");
    construct->add_option("family", family,
                          "one of gray-symmetric, gray-asymmetric, einstein, kahler, product")
        ->required();
    construct->add_option("--genus", genus, "genus of the base surface");
    construct->add_option("--k", k, "Chern number of the circle bundle");
    construct->add_option("--x", x, "endpoint parameter in (0, eps_s)");
    double y_value = 0.0;
    auto* y_opt = construct->add_option("--y", y_value, "lower endpoint (asymmetric family)");
    construct->add_option("--s", s, "fiber scale (kahler family)");
    construct->add_option("--D", D, "coefficient D > 0 (kahler family)");
    construct->add_option("--alpha", alpha, "endpoint ratio > 1 (product family)");
    construct->add_option("--out", out, "profile JSON output path");
    construct->add_option("--csv", csv_out, "optional CSV export path");

    // verify
    std::string verify_path, report_path;
    std::vector<std::string> checks, tol_overrides;
    auto* verify = app.add_subcommand("verify", "run curvature checks against a profile file");
    verify->add_option("path", verify_path, "profile JSON file")->required();
    verify->add_option("--checks", checks,
                       "subset of: boundary parity gray-1d einstein engine-agreement "
                       "gray-tensorial killing-tensor")
        ->delimiter(',');
    verify->add_option("--tolerance", tol_overrides, "override name=value, repeatable");
    verify->add_option("--report", report_path, "write the JSON report here instead of stdout");

    // sweep
    std::string kind, format = "csv", sweep_out;
    int g_lo = 2, g_hi = 6, ns = 9, nd = 5;
    double tol_eta = 1e-5, s_lo = 0.25, s_hi = 2.25, d_lo = 0.5, d_hi = 8.0;
    std::vector<double> s_values;
    int eps = -1;
    auto* sweep = app.add_subcommand("sweep", "parameter sweeps (CSV or JSON)");
    sweep->add_option("kind", kind, "one of einstein-count, eta, eps-s, kahler-window")
        ->required();
    sweep->add_option("--from", g_lo, "first genus (einstein-count)");
    sweep->add_option("--to", g_hi, "last genus (einstein-count)");
    sweep->add_option("--tol", tol_eta, "bisection tolerance (eta)");
    sweep->add_option("--s", s_values, "explicit s values (eps-s)")->delimiter(',');
    sweep->add_option("--eps", eps, "sign eps (eps-s)");
    sweep->add_option("--s-lo", s_lo, "s grid start (kahler-window)");
    sweep->add_option("--s-hi", s_hi, "s grid end (kahler-window)");
    sweep->add_option("--ns", ns, "s grid size (kahler-window)");
    sweep->add_option("--d-lo", d_lo, "D grid start (kahler-window)");
    sweep->add_option("--d-hi", d_hi, "D grid end (kahler-window)");
    sweep->add_option("--nd", nd, "D grid size (kahler-window)");
    sweep->add_option("--format", format, "csv (default) or json");
    sweep->add_option("--out", sweep_out, "output path (default stdout)");

    // export
    std::string export_path, export_out;
    auto* exp = app.add_subcommand("export", "re-export a profile file as CSV");
    exp->add_option("path", export_path, "profile JSON file")->required();
    exp->add_option("--out", export_out, "CSV output path")->required();

    CLI11_PARSE(app, argc, argv);

    if (construct->parsed()) {
        if (y_opt->count() > 0) y = y_value;
        return run_construct(family, genus, k, x, y, s, D, alpha, out, csv_out);
    }
    if (verify->parsed()) return run_verify(verify_path, checks, tol_overrides, report_path);
    if (sweep->parsed()) {
        try {
            SweepResult result;
            if (kind == "einstein-count") {
                result = sweep_einstein_count(g_lo, g_hi);
            } else if (kind == "eta") {
                result = sweep_eta(tol_eta);
            } else if (kind == "eps-s") {
                if (s_values.empty()) s_values = {0.5, 1.0, 1.5, 2.0, 3.0};
                result = sweep_eps_s(s_values, eps);
            } else if (kind == "kahler-window") {
                result = sweep_kahler_window(s_lo, s_hi, ns, d_lo, d_hi, nd);
            } else {
                std::cerr << "error: unknown sweep kind " << kind << "\n";
                return 1;
            }
            return emit_sweep(result, format, sweep_out);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    if (exp->parsed()) {
        try {
            MetricProfile profile = read_profile_file(export_path);
            RicciField field = ricci_eigenvalues(profile);
            write_profile_csv(profile, field, export_out);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
        return 0;
    }
    return 1;
}
