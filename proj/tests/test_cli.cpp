#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "confcalc/suites.hpp"

using namespace confcalc;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(CONFCALC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("suite enumeration is stable and complete") {
    auto suites = list_suites();
    CHECK(suites.size() == 8);
    CHECK(suites.front().first == "ward-sphere");
    CHECK(suites.back().first == "all");
    bool has_ward = false;
    for (const auto& [name, desc] : suites) has_ward = has_ward || name == "ward-sphere";
    CHECK(has_ward);
    // stable ordering
    CHECK(list_suites() == suites);
}

TEST_CASE("config parsing and validation") {
    nlohmann::json good = {{"eta0", 2e-3}, {"seed", 5}, {"charges", {1.0, -1.0}},
                           {"points", {{0.0, 0.0}, {1.0, 0.0}}}};
    ExperimentConfig cfg = parse_config(good);
    CHECK(cfg.eta0 == 2e-3);
    CHECK(cfg.seed == 5);

    nlohmann::json bad_rho = {{"factorize", {{"rho_a", 1.5}, {"rho_b", 0.5}}}};
    CHECK_THROWS_AS(parse_config(bad_rho), config_error);

    nlohmann::json bad_eta = {{"eta0", -1.0}};
    CHECK_THROWS_AS(parse_config(bad_eta), config_error);

    nlohmann::json mismatch = {{"charges", {1.0}}, {"points", {{0.0, 0.0}, {1.0, 0.0}}}};
    CHECK_THROWS_AS(parse_config(mismatch), config_error);
}

TEST_CASE("report serialization shape") {
    SuiteReport rep;
    rep.suite = "demo";
    rep.add(make_check("alpha", cplx(1.0, 2.0), cplx(1.0, 2.0), 1e-9, 1e-6));
    auto j = to_json(rep);
    CHECK(j["suite"] == "demo");
    CHECK(j["pass"] == true);
    CHECK(j["checks"][0]["name"] == "alpha");
    CHECK(j["checks"][0]["value"][1] == 2.0);
    CHECK(j["checks"][0]["pass"] == true);

    rep.add(make_check("beta", 0.0, 0.0, 1.0, 1e-6));
    CHECK_FALSE(rep.pass);

    std::vector<GridPoint> grid{{cplx(1.0, 2.0), cplx(3.0, 4.0), 5e-7}};
    std::string csv = grid_csv(grid);
    CHECK(csv.rfind("re_w,im_w,re_value,im_value,residual\n", 0) == 0);
    CHECK(csv.find("1,2,3,4,5e-07") != std::string::npos);
}

TEST_CASE("cli: exit codes and artifacts") {
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "confcalc_cli_test";
    fs::remove_all(tmp);
    fs::create_directories(tmp);

    SECTION("list exits 0") { CHECK(run_cli("list") == 0); }

    SECTION("unknown suite is a config error") { CHECK(run_cli("no-such-suite") == 2); }

    SECTION("malformed config exits 2") {
        fs::path cfg = tmp / "bad.json";
        std::ofstream(cfg) << R"({"factorize": {"rho_a": 1.5, "rho_b": 0.5}})";
        CHECK(run_cli("factorize --config " + cfg.string()) == 2);

        fs::path garbled = tmp / "garbled.json";
        std::ofstream(garbled) << "{not json";
        CHECK(run_cli("flow --config " + garbled.string()) == 2);
    }

    SECTION("passing suite exits 0 and reports are byte-identical") {
        fs::path out1 = tmp / "run1";
        fs::path out2 = tmp / "run2";
        CHECK(run_cli("schwarzian --seed 0 --out " + out1.string()) == 0);
        CHECK(run_cli("schwarzian --seed 0 --out " + out2.string()) == 0);
        std::string r1 = slurp(out1 / "report.json");
        std::string r2 = slurp(out2 / "report.json");
        REQUIRE_FALSE(r1.empty());
        CHECK(r1 == r2);

        auto j = nlohmann::json::parse(r1);
        CHECK(j["suite"] == "schwarzian");
        CHECK(j["pass"] == true);
        for (const auto& c : j["checks"]) {
            CHECK(c.contains("name"));
            CHECK(c.contains("value"));
            CHECK(c.contains("oracle"));
            CHECK(c.contains("residual"));
            CHECK(c.contains("tol"));
            CHECK(c.contains("pass"));
        }
    }

    SECTION("failing tolerance exits 1") {
        // an absurdly tight tolerance scale forces check failures
        CHECK(run_cli("flow --tol 1e-9") == 1);
    }

    fs::remove_all(tmp);
}
