// confcalc: batch driver for the verification suites.
//
//   confcalc <suite> [--config <path>] [--out <dir>] [--seed N] [--eta0 X] [--tol X]
//   confcalc list
//
// Writes report.json (and grid.csv for suites with w-grids) under --out.
// Exit codes: 0 all checks pass, 1 numerical check failures, 2 config errors.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "confcalc/confcalc.hpp"

namespace {

int run_cli(int argc, char** argv) {
    CLI::App app{"calculus on conformal maps: verification suites"};
    app.require_subcommand(0, 1);

    std::string suite;
    std::string config_path;
    std::string out_dir;
    double eta0 = -1.0;
    double tol_scale = -1.0;
    std::int64_t seed = -1;

    app.add_option("suite", suite, "suite name, or 'list' to enumerate suites");
    app.add_option("--config", config_path, "JSON experiment configuration");
    app.add_option("--out", out_dir, "output directory for report.json / grid.csv");
    app.add_option("--seed", seed, "seed for randomized property trials");
    app.add_option("--eta0", eta0, "base derivative step");
    app.add_option("--tol", tol_scale, "tolerance scale factor");

    CLI11_PARSE(app, argc, argv);

    if (suite.empty() || suite == "list") {
        for (const auto& [name, desc] : confcalc::list_suites())
            std::printf("%-18s %s\n", name.c_str(), desc.c_str());
        return 0;
    }

    confcalc::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = confcalc::load_config_file(config_path);
    cfg.suite = suite;
    if (eta0 > 0.0) cfg.eta0 = eta0;
    if (tol_scale > 0.0) cfg.tol_scale = tol_scale;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (!out_dir.empty()) cfg.out_dir = out_dir;

    bool known = false;
    for (const auto& [name, desc] : confcalc::list_suites()) known = known || name == suite;
    if (!known) throw confcalc::config_error("unknown suite: " + suite);

    confcalc::SuiteReport report = confcalc::run_suite(suite, cfg);

    for (const auto& check : report.checks)
        std::printf("[%s] %-34s residual=%.3e tol=%.1e\n", check.pass ? "PASS" : "FAIL",
                    check.name.c_str(), check.residual, check.tol);
    std::printf("%s: %s (%zu checks)\n", suite.c_str(), report.pass ? "PASS" : "FAIL",
                report.checks.size());

    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        confcalc::write_file(cfg.out_dir + "/report.json", confcalc::to_json(report).dump(2) + "\n");
        if (!report.grid.empty())
            confcalc::write_file(cfg.out_dir + "/grid.csv", confcalc::grid_csv(report.grid));
    }
    return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const confcalc::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
