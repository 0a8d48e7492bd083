#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "confcalc/core.hpp"

namespace confcalc {

struct CheckResult {
    std::string name;
    cplx value = 0.0;
    cplx oracle = 0.0;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

inline CheckResult make_check(std::string name, cplx value, cplx oracle, double residual,
                              double tol) {
    return {std::move(name), value, oracle, residual, tol, residual <= tol};
}

struct GridPoint {
    cplx w;
    cplx value;
    double residual = 0.0;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    std::vector<GridPoint> grid;
    bool pass = true;

    void add(CheckResult c) {
        pass = pass && c.pass;
        checks.push_back(std::move(c));
    }
    void merge(const SuiteReport& other) {
        for (const auto& c : other.checks) add(c);
        grid.insert(grid.end(), other.grid.begin(), other.grid.end());
    }
};

inline nlohmann::ordered_json to_json(const SuiteReport& report) {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"value", {c.value.real(), c.value.imag()}},
                          {"oracle", {c.oracle.real(), c.oracle.imag()}},
                          {"residual", c.residual},
                          {"tol", c.tol},
                          {"pass", c.pass}});
    }
    return nlohmann::ordered_json{
        {"suite", report.suite}, {"checks", checks}, {"pass", report.pass}};
}

inline std::string grid_csv(const std::vector<GridPoint>& grid) {
    std::string out = "re_w,im_w,re_value,im_value,residual\n";
    char line[256];
    for (const auto& p : grid) {
        std::snprintf(line, sizeof(line), "%.12g,%.12g,%.12g,%.12g,%.12g\n", p.w.real(),
                      p.w.imag(), p.value.real(), p.value.imag(), p.residual);
        out += line;
    }
    return out;
}

inline void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open output file: " + path);
    f << contents;
}

}  // namespace confcalc
