#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "grayforge/families.hpp"
#include "grayforge/io.hpp"
#include "grayforge/kahler.hpp"
#include "grayforge/product.hpp"
#include "grayforge/ricci.hpp"
#include "grayforge/sweep.hpp"

using namespace grayforge;

TEST_CASE("profile file round-trip is byte-identical and self-describing") {
    MetricProfile p = gray_symmetric_profile(0, 1, 0.5);
    std::string first = profile_to_json(p);
    MetricProfile loaded = profile_from_json(first);
    std::string second = profile_to_json(loaded);
    CHECK(first == second);

    CHECK(loaded.family_tag == p.family_tag);
    CHECK(loaded.size() == p.size());
    CHECK(loaded.recipe.valid);
    REQUIRE(loaded.params.has_value());
    CHECK(loaded.params->genus == 0);
    CHECK(loaded.params->eps == 1);

    // the reloaded profile still certifies
    RicciField field = ricci_eigenvalues(loaded);
    CHECK(check_gray_1d(field, loaded).passed());
    CHECK(check_boundary(loaded).passed());
}

TEST_CASE("construction is deterministic: same arguments, same bytes") {
    std::string a = profile_to_json(gray_symmetric_profile(3, 1, 0.3));
    std::string b = profile_to_json(gray_symmetric_profile(3, 1, 0.3));
    CHECK(a == b);
}

TEST_CASE("all family blocks survive the round trip with working recipes") {
    std::vector<MetricProfile> profiles;
    profiles.push_back(kahler_profile(make_kahler_spec(1.0, 2.0)));
    profiles.push_back(product_profile(make_product_spec(2.0)));
    for (const auto& p : profiles) {
        MetricProfile loaded = profile_from_json(profile_to_json(p));
        CHECK(profile_to_json(loaded) == profile_to_json(p));
        REQUIRE(loaded.recipe.valid);
        ProfileEvaluator ev(loaded.recipe);
        CHECK(ev.half_domain() == doctest::Approx(p.a).epsilon(1e-8));
        for (std::size_t i = 100; i < p.size(); i += 500) {
            CHECK(ev.g(p.t_grid[i]) == doctest::Approx(p.g[i]).epsilon(1e-9));
            CHECK(std::abs(ev.f(p.t_grid[i]) - p.f[i]) < 1e-9);
        }
    }
}

TEST_CASE("malformed input is rejected with distinct errors") {
    CHECK_THROWS_AS(profile_from_json("{ not json"), std::runtime_error);
    CHECK_THROWS_AS(profile_from_json("{\"format_version\":99}"), std::runtime_error);
    CHECK_THROWS_AS(read_profile_file("/nonexistent/path.json"), std::runtime_error);
    // unequal array lengths
    MetricProfile p = product_profile(make_product_spec(2.0));
    nlohmann::json j = nlohmann::json::parse(profile_to_json(p));
    j["f"] = std::vector<double>{1.0, 2.0};
    CHECK_THROWS_AS(profile_from_json(j.dump()), std::runtime_error);
}

TEST_CASE("CSV export carries the seven documented columns") {
    MetricProfile p = product_profile(make_product_spec(2.0));
    RicciField field = ricci_eigenvalues(p);
    std::string csv = profile_to_csv(p, field);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "t,f,g,h,lambda0,lambda1,lambda2");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == p.size());
}

TEST_CASE("report JSON records verdicts") {
    VerificationReport r("demo");
    r.add("ok entry", 1e-9, 1e-6);
    r.add("bad entry", 2.0, 1e-6);
    std::string json = report_to_json(r);
    auto parsed = nlohmann::json::parse(json);
    CHECK(parsed.at("verdict") == "fail");
    CHECK(parsed.at("checks").size() == 2);
    CHECK(parsed.at("checks")[0].at("pass") == true);
    CHECK(parsed.at("checks")[1].at("pass") == false);
}

TEST_CASE("sweep CSV and JSON carry identical numeric content") {
    SweepResult sweep = sweep_eps_s({0.5, 1.0, 1.5, 2.0, 3.0}, -1);
    // last two entries saturate at 1
    CHECK(sweep.rows[3][1] == 1.0);
    CHECK(sweep.rows[4][1] == 1.0);

    std::string csv = sweep_to_csv(sweep);
    std::string json = sweep_to_json(sweep);
    auto parsed = nlohmann::json::parse(json);
    // parse the CSV back
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);  // header
    std::size_t row = 0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        std::istringstream cells(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(cells, cell, ',')) {
            double csv_value = std::stod(cell);
            double json_value = parsed.at("rows")[row][col].get<double>();
            CHECK(csv_value == json_value);
            ++col;
        }
        ++row;
    }
    CHECK(row == sweep.rows.size());
}

TEST_CASE("einstein-count sweep reproduces the 2g - 3 ladder") {
    SweepResult sweep = sweep_einstein_count(2, 6);
    REQUIRE(sweep.rows.size() == 5);
    double expected[] = {1, 3, 5, 7, 9};
    for (std::size_t i = 0; i < 5; ++i) CHECK(sweep.rows[i][1] == expected[i]);
}

TEST_CASE("kahler window sweep marks the s in (0,2) strip") {
    SweepResult sweep = sweep_kahler_window(0.5, 2.5, 5, 1.0, 4.0, 2);
    // s values: 0.5, 1.0, 1.5, 2.0, 2.5 -> feasible for the first three only
    for (const auto& row : sweep.rows) {
        bool feasible = row[2] > 0.5;
        CHECK(feasible == (row[0] < 2.0));
    }
}
