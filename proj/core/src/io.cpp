#include "grayforge/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "grayforge/kahler.hpp"

namespace grayforge {

namespace {

std::string fmt(double v) {
    if (!std::isfinite(v)) throw std::runtime_error("io: refusing to serialize a non-finite value");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += ch;
        }
    }
    out += '"';
    return out;
}

void append_array(std::string& out, const std::string& key, const std::vector<double>& v) {
    out += quote(key);
    out += ":[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += fmt(v[i]);
    }
    out += ']';
}

std::string params_json(const std::optional<FamilyParams>& params) {
    if (!params) return "null";
    const FamilyParams& p = *params;
    std::string out = "{";
    out += quote("genus") + ":" + std::to_string(p.genus) + ",";
    out += quote("chern_k") + ":" + std::to_string(p.chern_k) + ",";
    out += quote("K") + ":" + fmt(p.K) + ",";
    out += quote("s") + ":" + fmt(p.s) + ",";
    out += quote("s_num") + ":" + std::to_string(p.s_exact.num) + ",";
    out += quote("s_den") + ":" + std::to_string(p.s_exact.den) + ",";
    out += quote("A") + ":" + std::to_string(p.A) + ",";
    out += quote("eps") + ":" + std::to_string(p.eps) + ",";
    out += quote("euler_chi") + ":" + std::to_string(p.euler_chi);
    out += "}";
    return out;
}

std::string block_json(const FamilyBlock& block) {
    std::string out = "{";
    if (const auto* gb = std::get_if<GrayBlock>(&block)) {
        out += quote("type") + ":" + quote("gray") + ",";
        out += quote("C_norm") + ":" + fmt(gb->coeffs.C_norm) + ",";
        out += quote("D_norm") + ":" + fmt(gb->coeffs.D_norm) + ",";
        out += quote("E_norm") + ":" + fmt(gb->coeffs.E_norm) + ",";
        out += quote("s") + ":" + fmt(gb->coeffs.s) + ",";
        out += quote("x") + ":" + fmt(gb->x) + ",";
        out += quote("y") + ":" + fmt(gb->y) + ",";
        out += quote("eps") + ":" + std::to_string(gb->eps) + ",";
        out += quote("A") + ":" + std::to_string(gb->A);
    } else if (const auto* kb = std::get_if<KahlerBlock>(&block)) {
        out += quote("type") + ":" + quote("kahler") + ",";
        out += quote("s") + ":" + fmt(kb->s) + ",";
        out += quote("D") + ":" + fmt(kb->D) + ",";
        out += quote("C") + ":" + fmt(kb->C) + ",";
        out += quote("E") + ":" + fmt(kb->E) + ",";
        out += quote("y") + ":" + fmt(kb->y) + ",";
        out += quote("x") + ":" + fmt(kb->x);
    } else if (const auto* pb = std::get_if<ProductBlock>(&block)) {
        out += quote("type") + ":" + quote("product") + ",";
        out += quote("alpha") + ":" + fmt(pb->alpha) + ",";
        out += quote("A3") + ":" + fmt(pb->A3) + ",";
        out += quote("B3") + ":" + fmt(pb->B3) + ",";
        out += quote("C3") + ":" + fmt(pb->C3) + ",";
        out += quote("y") + ":" + fmt(pb->y) + ",";
        out += quote("x") + ":" + fmt(pb->x);
    } else {
        out += quote("type") + ":" + quote("none");
    }
    out += "}";
    return out;
}

}  // namespace

std::string profile_to_json(const MetricProfile& profile) {
    std::string out = "{\n";
    out += quote("format_version") + ":" + std::to_string(kProfileFormatVersion) + ",\n";
    out += quote("family_tag") + ":" + quote(profile.family_tag) + ",\n";
    out += quote("params") + ":" + params_json(profile.params) + ",\n";
    out += quote("coefficients") + ":" + block_json(profile.block) + ",\n";
    append_array(out, "t_grid", profile.t_grid);
    out += ",\n";
    append_array(out, "f", profile.f);
    out += ",\n";
    append_array(out, "g", profile.g);
    out += ",\n";
    append_array(out, "h", profile.h);
    out += ",\n";
    out += quote("metadata") + ":{";
    out += quote("generator") + ":" + quote("grayforge") + ",";
    out += quote("a") + ":" + fmt(profile.a) + ",";
    out += quote("s") + ":" + fmt(profile.s) + ",";
    out += quote("K") + ":" + fmt(profile.K) + ",";
    out += quote("ode_atol") + ":" + fmt(1e-11) + ",";
    out += quote("ode_rtol") + ":" + fmt(1e-11);
    out += "}\n}\n";
    return out;
}

void write_profile_file(const MetricProfile& profile, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open for writing: " + path);
    file << profile_to_json(profile);
    if (!file) throw std::runtime_error("write failed: " + path);
}

namespace {

ProfileRecipe recipe_from_block(const MetricProfile& profile) {
    ProfileRecipe recipe;
    if (const auto* gb = std::get_if<GrayBlock>(&profile.block)) {
        Coefficients coeffs =
            Coefficients::from_normalized(gb->coeffs.C_norm, gb->coeffs.D_norm, gb->coeffs.E_norm,
                                          gb->coeffs.s);
        ProfilePolynomial poly = p_poly(coeffs, gb->eps);
        auto z0 = poly.z0_function();
        auto dz0 = poly.z0_derivative_function();
        const double s = coeffs.s;
        recipe.Q = [z0, s](double h) { return z0(h / s); };
        recipe.dQ = [dz0, s](double h) { return dz0(h / s) / s; };
        recipe.h_lo = s * gb->y;
        recipe.h_hi = s * gb->x;
        recipe.g_rule = gb->A == 1 ? GRule::SqrtH2MinusS2 : GRule::SqrtS2MinusH2;
        recipe.f_rule = FRule::DhDt;
        recipe.s = s;
        recipe.K = profile.K;
        recipe.valid = true;
    } else if (const auto* kb = std::get_if<KahlerBlock>(&profile.block)) {
        KahlerSpec spec;
        spec.s = kb->s;
        spec.D = kb->D;
        spec.C = kb->C;
        spec.E = kb->E;
        spec.y = kb->y;
        spec.x = kb->x;
        spec.K = profile.K;
        recipe.Q = kahler_p(spec);
        recipe.dQ = kahler_p_derivative(spec);
        recipe.h_lo = kb->y;
        recipe.h_hi = kb->x;
        recipe.g_rule = GRule::Identity;
        recipe.f_rule = FRule::HTimesDhOverS;
        recipe.s = kb->s;
        recipe.K = profile.K;
        recipe.valid = true;
    } else if (const auto* pb = std::get_if<ProductBlock>(&profile.block)) {
        const double A = pb->A3, B = pb->B3, C = pb->C3;
        recipe.Q = [A, B, C](double g) { return A / g + B * g * g * g * g + C * g * g + 4.0; };
        recipe.dQ = [A, B, C](double g) { return -A / (g * g) + 4.0 * B * g * g * g + 2.0 * C * g; };
        recipe.h_lo = pb->y;
        recipe.h_hi = pb->x;
        recipe.g_rule = GRule::Identity;
        recipe.f_rule = FRule::DhDt;
        recipe.s = 0.0;
        recipe.K = profile.K;
        recipe.valid = true;
    }
    return recipe;
}

}  // namespace

MetricProfile profile_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("malformed profile file: ") + e.what());
    }
    if (!j.contains("format_version") || j.at("format_version").get<int>() != kProfileFormatVersion)
        throw std::runtime_error("unsupported profile format_version");

    MetricProfile p;
    p.family_tag = j.at("family_tag").get<std::string>();
    p.t_grid = j.at("t_grid").get<std::vector<double>>();
    p.f = j.at("f").get<std::vector<double>>();
    p.g = j.at("g").get<std::vector<double>>();
    p.h = j.at("h").get<std::vector<double>>();
    if (p.t_grid.empty() || p.f.size() != p.t_grid.size() || p.g.size() != p.t_grid.size() ||
        p.h.size() != p.t_grid.size())
        throw std::runtime_error("profile arrays missing or of unequal length");
    for (std::size_t i = 1; i < p.t_grid.size(); ++i)
        if (!(p.t_grid[i] > p.t_grid[i - 1]))
            throw std::runtime_error("t_grid must be strictly increasing");

    const auto& meta = j.at("metadata");
    p.a = meta.at("a").get<double>();
    p.s = meta.at("s").get<double>();
    p.K = meta.at("K").get<double>();

    if (j.contains("params") && !j.at("params").is_null()) {
        const auto& pj = j.at("params");
        FamilyParams params;
        params.genus = pj.at("genus").get<int>();
        params.chern_k = pj.at("chern_k").get<int>();
        params.K = pj.at("K").get<double>();
        params.s = pj.at("s").get<double>();
        params.s_exact = Rational{pj.at("s_num").get<long long>(), pj.at("s_den").get<long long>()};
        params.A = pj.at("A").get<int>();
        params.eps = pj.at("eps").get<int>();
        params.euler_chi = pj.at("euler_chi").get<int>();
        p.params = params;
    }

    const auto& cb = j.at("coefficients");
    const std::string type = cb.at("type").get<std::string>();
    if (type == "gray") {
        GrayBlock gb;
        gb.coeffs = Coefficients::from_normalized(cb.at("C_norm").get<double>(),
                                                  cb.at("D_norm").get<double>(),
                                                  cb.at("E_norm").get<double>(),
                                                  cb.at("s").get<double>());
        gb.x = cb.at("x").get<double>();
        gb.y = cb.at("y").get<double>();
        gb.eps = cb.at("eps").get<int>();
        gb.A = cb.at("A").get<int>();
        p.block = gb;
    } else if (type == "kahler") {
        KahlerBlock kb;
        kb.s = cb.at("s").get<double>();
        kb.D = cb.at("D").get<double>();
        kb.C = cb.at("C").get<double>();
        kb.E = cb.at("E").get<double>();
        kb.y = cb.at("y").get<double>();
        kb.x = cb.at("x").get<double>();
        p.block = kb;
    } else if (type == "product") {
        ProductBlock pb;
        pb.alpha = cb.at("alpha").get<double>();
        pb.A3 = cb.at("A3").get<double>();
        pb.B3 = cb.at("B3").get<double>();
        pb.C3 = cb.at("C3").get<double>();
        pb.y = cb.at("y").get<double>();
        pb.x = cb.at("x").get<double>();
        p.block = pb;
    }
    p.recipe = recipe_from_block(p);
    return p;
}

MetricProfile read_profile_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << file.rdbuf();
    return profile_from_json(buf.str());
}

std::string report_to_json(const VerificationReport& report) {
    std::string out = "{\n";
    out += quote("subject") + ":" + quote(report.subject()) + ",\n";
    out += quote("verdict") + ":" + quote(report.passed() ? "pass" : "fail") + ",\n";
    out += quote("checks") + ":[\n";
    const auto& entries = report.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        out += "  {" + quote("name") + ":" + quote(e.name) + "," + quote("value") + ":" +
               fmt(e.value) + "," + quote("tolerance") + ":" + fmt(e.tolerance) + "," +
               quote("pass") + ":" + (e.pass ? "true" : "false") + "," + quote("informational") +
               ":" + (e.informational ? "true" : "false") + "}";
        if (i + 1 < entries.size()) out += ",";
        out += "\n";
    }
    out += "]\n}\n";
    return out;
}

std::string profile_to_csv(const MetricProfile& profile, const RicciField& field) {
    std::string out = "t,f,g,h,lambda0,lambda1,lambda2\n";
    for (std::size_t i = 0; i < profile.size(); ++i) {
        out += fmt(profile.t_grid[i]) + "," + fmt(profile.f[i]) + "," + fmt(profile.g[i]) + "," +
               fmt(profile.h[i]) + "," + fmt(field.lambda0[i]) + "," + fmt(field.lambda1[i]) +
               "," + fmt(field.lambda2[i]) + "\n";
    }
    return out;
}

void write_profile_csv(const MetricProfile& profile, const RicciField& field,
                       const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open for writing: " + path);
    file << profile_to_csv(profile, field);
    if (!file) throw std::runtime_error("write failed: " + path);
}

}  // namespace grayforge
