// End-to-end exercises of the command-line tool: spawns the built binary.
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "grayforge/io.hpp"

using namespace grayforge;

namespace {

const std::string cli = GRAYFORGE_CLI_PATH;

int run(const std::string& args, const std::string& env = {}) {
    std::string cmd = env.empty() ? cli + " " + args : env + " " + cli + " " + args;
    cmd += " > /tmp/grayforge_cli_out.txt 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string last_output() {
    std::ifstream file("/tmp/grayforge_cli_out.txt");
    std::ostringstream buf;
    buf << file.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("construct + verify round trip through the filesystem") {
    CHECK(run("construct gray-symmetric --genus 0 --k 1 --x 0.5 --out /tmp/gf_g0.json") == 0);
    CHECK(run("verify /tmp/gf_g0.json --report /tmp/gf_g0_report.json") == 0);
    auto report = nlohmann::json::parse(std::ifstream("/tmp/gf_g0_report.json"));
    CHECK(report.at("verdict") == "pass");
}

TEST_CASE("einstein construction and the excluded k") {
    CHECK(run("construct einstein --genus 3 --k 1 --out /tmp/gf_e31.json") == 0);
    CHECK(run("verify /tmp/gf_e31.json --checks boundary,gray-1d,einstein") == 0);
    // k = 4 gives s = 2: no quartic root, rejected as infeasible
    CHECK(run("construct einstein --genus 3 --k 4 --out /tmp/gf_e34.json") == 2);
}

TEST_CASE("kahler and product constructions") {
    CHECK(run("construct kahler --s 1 --D 2 --out /tmp/gf_k.json") == 0);
    CHECK(run("construct kahler --s 2 --D 2 --out /tmp/gf_k2.json") == 2);
    CHECK(run("construct product --alpha 2 --out /tmp/gf_p.json") == 0);
    CHECK(run("verify /tmp/gf_p.json --checks boundary,gray-1d,engine-agreement") == 0);
}

TEST_CASE("asymmetric construction locates the lower endpoint itself") {
    // genus 3, k = 2 gives s = 1; x = 0.685 lies on the compatible curve
    CHECK(run("construct gray-asymmetric --genus 3 --k 2 --x 0.685 --out /tmp/gf_a.json") == 0);
    CHECK(run("verify /tmp/gf_a.json --checks boundary,gray-1d,gray-tensorial") == 0);
    // genus 0 has eps = +1: the asymmetric branch does not apply
    CHECK(run("construct gray-asymmetric --genus 0 --k 1 --x 0.5 --out /tmp/gf_a0.json") == 2);
}

TEST_CASE("tolerance overrides can force a failure") {
    CHECK(run("verify /tmp/gf_g0.json --checks boundary --tolerance boundary-derivative=1e-20") == 3);
}

TEST_CASE("verification failures and IO errors are distinct exit codes") {
    CHECK(run("verify /tmp/gf_does_not_exist.json") == 1);

    std::ofstream("/tmp/gf_bad.json") << "{ not json";
    CHECK(run("verify /tmp/gf_bad.json") == 1);

    // zero out f: boundary and eigenvalue structure collapse -> exit 3
    MetricProfile p = read_profile_file("/tmp/gf_g0.json");
    for (double& v : p.f) v = 0.0;
    write_profile_file(p, "/tmp/gf_zeroed.json");
    CHECK(run("verify /tmp/gf_zeroed.json --checks boundary,gray-1d") == 3);

    // a huge tolerance scale waves the same profile through
    CHECK(run("verify /tmp/gf_zeroed.json --checks boundary", "GRAYFORGE_TOLERANCE_SCALE=1e12") == 0);
}

TEST_CASE("single-check routing") {
    CHECK(run("verify /tmp/gf_g0.json --checks gray-tensorial") == 0);
    std::string out = last_output();
    CHECK(out.find("gray-tensorial") != std::string::npos);
    CHECK(out.find("boundary") == std::string::npos);
}

TEST_CASE("sweeps emit CSV with the documented content") {
    CHECK(run("sweep einstein-count --from 2 --to 6") == 0);
    std::string out = last_output();
    CHECK(out.find("genus,count") != std::string::npos);
    CHECK(out.find("2,1") != std::string::npos);
    CHECK(out.find("6,9") != std::string::npos);

    CHECK(run("sweep eps-s --s 0.5,1,1.5,2,3 --eps -1") == 0);
    out = last_output();
    CHECK(out.find("2,1") != std::string::npos);
    CHECK(out.find("3,1") != std::string::npos);

    CHECK(run("sweep eta --tol 1e-3") == 0);
    out = last_output();
    CHECK(out.find("lo,hi,estimate") != std::string::npos);
    CHECK(out.find("2.05") != std::string::npos);
}

TEST_CASE("export re-emits the CSV columns") {
    CHECK(run("export /tmp/gf_g0.json --out /tmp/gf_g0.csv") == 0);
    std::ifstream file("/tmp/gf_g0.csv");
    std::string header;
    std::getline(file, header);
    CHECK(header == "t,f,g,h,lambda0,lambda1,lambda2");
}

TEST_CASE("constructed profiles are reproducible bit for bit") {
    CHECK(run("construct product --alpha 2 --out /tmp/gf_p1.json") == 0);
    CHECK(run("construct product --alpha 2 --out /tmp/gf_p2.json") == 0);
    std::ifstream f1("/tmp/gf_p1.json"), f2("/tmp/gf_p2.json");
    std::ostringstream b1, b2;
    b1 << f1.rdbuf();
    b2 << f2.rdbuf();
    CHECK(b1.str() == b2.str());
    CHECK(!b1.str().empty());
}
