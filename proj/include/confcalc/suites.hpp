#pragma once

#include <algorithm>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "confcalc/cft.hpp"
#include "confcalc/configuration.hpp"
#include "confcalc/core.hpp"
#include "confcalc/derivative.hpp"
#include "confcalc/factorization.hpp"
#include "confcalc/flow.hpp"
#include "confcalc/report.hpp"
#include "confcalc/riemann_map.hpp"
#include "confcalc/vector_field.hpp"

namespace confcalc {

// Parameters for the verification suites. Tolerances are pinned to their
// contract values here; tol_scale only loosens or tightens for exploration,
// the defaults are the acceptance thresholds.
struct ExperimentConfig {
    std::string suite = "all";
    double eta0 = 1e-3;
    double tol_scale = 1.0;
    std::uint64_t seed = 0;
    std::string out_dir;

    std::vector<double> charges{1.0, -1.0};
    std::vector<cplx> points{0.0, 1.0};
    std::vector<double> charges4{1.0, -1.0, 1.0, -1.0};
    std::vector<cplx> points4{cplx(0.3, 0.2), cplx(1.1, -0.4), cplx(-0.8, 0.9),
                              cplx(-0.5, -0.6)};
    int w_count = 20;

    double delta_h = 0.5;     // half-plane primary weight
    cplx z_h = cplx(0.0, 1.0);
    double central_charge = 1.0;

    std::vector<double> drc_eps{0.1, 0.05};

    double fact_rho_a = 0.5;
    double fact_rho_b = 1.5;
    double fact_pole = 0.01;
    double fact_quad = 0.005;
    double fact_tol = 1e-13;
};

inline std::vector<std::pair<std::string, std::string>> list_suites() {
    return {
        {"ward-sphere", "sphere conformal Ward identity as a holomorphic derivative"},
        {"ward-halfplane", "half-plane Ward identity, reflection and boundary continuum"},
        {"drc", "stress tensor from the angular Joukowsky average"},
        {"flow", "exponential flows: closed forms, RK4, semigroup, commutation"},
        {"factorize", "annular factorization g = g_{A'} o g_B"},
        {"schwarzian", "Schwarzian derivative identities and T one-point transport"},
        {"derivative-props", "derivative-engine self-consistency and continuous-dual checks"},
        {"all", "every suite above"},
    };
}

namespace suites {

inline cplx parse_cplx(const nlohmann::json& j) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    return cplx(j.at(0).get<double>(), j.at(1).get<double>());
}

inline Configuration gff_config(const std::vector<double>& charges,
                                const std::vector<cplx>& points) {
    if (charges.size() != points.size())
        throw config_error("charges and points must have equal length");
    std::vector<MarkedPoint> pts;
    for (size_t j = 0; j < charges.size(); ++j)
        pts.push_back({points[j], PrimaryFieldData::gff(charges[j]), 1.0});
    return Configuration::on_sphere(std::move(pts));
}

inline Configuration halfplane_config(cplx z, double delta) {
    return Configuration::on_halfplane({{z, PrimaryFieldData::primary(delta, delta), 1.0}});
}

// w grid: two rings around the configuration's centroid, clear of the points.
inline std::vector<cplx> w_ring_grid(const Configuration& sigma, int count, double r1 = 2.2,
                                     double r2 = 3.4) {
    cplx centroid = 0.0;
    for (const auto& p : sigma.points()) centroid += p.position;
    if (!sigma.points().empty()) centroid /= static_cast<double>(sigma.points().size());
    std::vector<cplx> ws;
    int n1 = count / 2, n2 = count - n1;
    for (int k = 0; k < n1; ++k)
        ws.push_back(centroid + r1 * std::polar(1.0, 2.0 * pi * (k + 0.3) / n1));
    for (int k = 0; k < n2; ++k)
        ws.push_back(centroid + r2 * std::polar(1.0, 2.0 * pi * (k + 0.7) / n2));
    return ws;
}

inline std::vector<cplx> halfplane_w_grid(int count) {
    std::vector<cplx> ws;
    for (int k = 0; k < count; ++k) {
        double x = -1.2 + 2.4 * k / std::max(1, count - 1);
        double y = 0.45 + 0.17 * (k % 5);
        ws.push_back(cplx(x, y) + cplx(0.0, (k % 2) ? 1.1 : 0.0));
    }
    return ws;
}

// ------------------------------ ward-sphere ------------------------------

inline SuiteReport run_ward_sphere(const ExperimentConfig& cfg) {
    SuiteReport rep;
    rep.suite = "ward-sphere";
    DerivativeOptions opt;
    opt.eta0 = cfg.eta0;
    Functional f = gff_functional();

    auto grid_block = [&](const char* label, const Configuration& sigma) {
        auto ws = w_ring_grid(sigma, cfg.w_count);
        for (size_t k = 0; k < ws.size(); ++k) {
            WardComparison cmp = ward_vs_derivative(f, sigma, ws[k], opt);
            rep.add(make_check(std::string(label) + "_w" + std::to_string(k), cmp.derivative,
                               cmp.oracle, cmp.relative_residual, 1e-6 * cfg.tol_scale));
            rep.grid.push_back({ws[k], cmp.derivative, cmp.relative_residual});
        }
    };
    grid_block("sphere_twopoint", gff_config(cfg.charges, cfg.points));
    grid_block("sphere_fourpoint", gff_config(cfg.charges4, cfg.points4));

    // Mobius invariance of the correlator itself (exact, with Jacobians).
    {
        Configuration sigma = gff_config(cfg.charges, cfg.points);
        cplx before = gff_sphere_correlator(sigma);
        ConformalMap G = ConformalMap::mobius(2.0, 1.0, 0.0, 1.0);
        cplx after = gff_sphere_correlator(apply_action(G, sigma));
        rep.add(make_check("gff_mobius_invariance", after, before,
                           std::abs(after - before) / std::abs(before),
                           1e-12 * cfg.tol_scale));
    }

    // Mobius covariance of the derivative (Theorem on global transport).
    {
        Configuration sigma = gff_config(cfg.charges, cfg.points);
        cplx w(1.6, 1.1);
        struct Case {
            const char* name;
            ConformalMap map;
        };
        const Case cases[] = {
            {"mobius_dilation", ConformalMap::scaling(1.7)},
            {"mobius_rotation", ConformalMap::scaling(std::polar(1.0, 0.8))},
            {"mobius_translation", ConformalMap::translation(cplx(0.4, -0.3))},
            {"mobius_inversion", ConformalMap::inversion()},
        };
        for (const auto& c : cases) {
            Configuration base = sigma;
            cplx wc = w;
            if (std::string(c.name) == "mobius_inversion") {
                // keep the inversion regular: exterior configuration
                base = gff_config(cfg.charges, {cplx(2.0, 0.3), cplx(-0.4, 2.2)});
                wc = cplx(1.3, -1.4);
            }
            double resid = check_mobius_covariance(f, base, c.map, wc, opt);
            double scale = 1.0 + std::abs(holo_derivative_point(f, base, wc, opt).value);
            rep.add(make_check(c.name, resid, 0.0, resid / scale, 1e-6 * cfg.tol_scale));
        }
    }
    return rep;
}

// ---------------------------- ward-halfplane -----------------------------

inline SuiteReport run_ward_halfplane(const ExperimentConfig& cfg) {
    SuiteReport rep;
    rep.suite = "ward-halfplane";
    DerivativeOptions opt;
    opt.eta0 = cfg.eta0;
    Functional f = halfplane_onepoint_functional();
    Configuration sigma = halfplane_config(cfg.z_h, cfg.delta_h);

    auto ws = halfplane_w_grid(std::min(cfg.w_count, 10));
    for (size_t k = 0; k < ws.size(); ++k) {
        if (std::abs(ws[k] - cfg.z_h) < 0.3) ws[k] += cplx(0.35, 0.15);
        WardComparison cmp = ward_vs_derivative(f, sigma, ws[k], opt);
        rep.add(make_check("halfplane_onepoint_w" + std::to_string(k), cmp.derivative,
                           cmp.oracle, cmp.relative_residual, 1e-5 * cfg.tol_scale));
        rep.grid.push_back({ws[k], cmp.derivative, cmp.relative_residual});
    }

    {
        cplx w(0.5, 0.8);
        double resid = reflection_decomposition_residual(f, sigma, w, opt);
        rep.add(make_check("reflection_decomposition", resid, 0.0, resid,
                           1e-5 * cfg.tol_scale));
    }

    {
        cplx w(0.5, 0.8);
        cplx direct = ward_rhs_halfplane(w, sigma);
        cplx rebuilt = boundary_continuum_insertion(f, sigma, w, 0.7, 40, opt);
        rep.add(make_check("boundary_continuum", rebuilt, direct,
                           std::abs(rebuilt - direct) / (1.0 + std::abs(direct)),
                           1e-4 * cfg.tol_scale));
    }

    {
        // additivity with the boundary argument included
        cplx w(-0.6, 1.4);
        double resid = additivity_check(f, sigma, w, opt);
        rep.add(make_check("halfplane_additivity", resid, 0.0, resid, 1e-5 * cfg.tol_scale));
    }

    {
        // Schwarz reflection symmetry of the oracle
        cplx w(0.9, 1.3);
        cplx a = ward_rhs_halfplane(std::conj(w), sigma);
        cplx b = std::conj(ward_rhs_halfplane(w, sigma));
        rep.add(make_check("ward_reflection_symmetry", a, b, std::abs(a - b),
                           1e-12 * cfg.tol_scale));
        // O(w^-4) decay at infinity
        double ratio = std::abs(ward_rhs_halfplane(cplx(2000.0, 500.0), sigma)) /
                       std::abs(ward_rhs_halfplane(cplx(1000.0, 250.0), sigma));
        rep.add(make_check("ward_decay_w4", ratio, 1.0 / 16.0, std::abs(ratio * 16.0 - 1.0),
                           0.05));
    }
    return rep;
}

// --------------------------------- drc -----------------------------------

inline SuiteReport run_drc(const ExperimentConfig& cfg) {
    SuiteReport rep;
    rep.suite = "drc";
    Functional f = gff_functional();
    Configuration sigma = gff_config(cfg.charges, cfg.points);

    {
        cplx v = joukowsky_stress_extraction(constant_functional(), sigma, cplx(2.0, 1.0),
                                             cfg.drc_eps);
        rep.add(make_check("drc_constant_zero", v, 0.0, std::abs(v), 1e-12 * cfg.tol_scale));
    }

    auto ws = w_ring_grid(sigma, std::min(cfg.w_count, 10), 2.0, 3.0);
    for (size_t k = 0; k < ws.size(); ++k) {
        cplx v = joukowsky_stress_extraction(f, sigma, ws[k], cfg.drc_eps);
        cplx oracle = ward_rhs_sphere(ws[k], sigma);
        double resid = std::abs(v - oracle) / (1.0 + std::abs(oracle));
        rep.add(make_check("drc_twopoint_w" + std::to_string(k), v, oracle, resid,
                           1e-4 * cfg.tol_scale));
        rep.grid.push_back({ws[k], v, resid});
    }

    {
        DerivativeOptions opt;
        opt.eta0 = cfg.eta0;
        cplx w(1.9, -1.2);
        cplx a = joukowsky_stress_extraction(f, sigma, w, cfg.drc_eps);
        cplx b = holo_derivative_point(f, sigma, w, opt).value;
        rep.add(make_check("drc_vs_point_derivative", a, b,
                           std::abs(a - b) / (1.0 + std::abs(b)), 1e-4 * cfg.tol_scale));
    }
    return rep;
}

// --------------------------------- flow ----------------------------------

inline SuiteReport run_flow(const ExperimentConfig& cfg) {
    SuiteReport rep;
    rep.suite = "flow";
    DomainDescriptor disk = DomainDescriptor::unit_disk();

    {
        VectorField h = VectorField::monomial(0, 1.0, disk);
        FlowResult fl = exponential_flow(h, 0.17);
        double worst = 0.0;
        for (cplx z : fl.shrunk_domain.probe_points())
            worst = std::max(worst, std::abs(fl.map(z) - (z + 0.17)));
        rep.add(make_check("flow_translation", worst, 0.0, worst, 1e-14));
    }

    {
        VectorField h = VectorField::monomial(2, 1.0, disk);
        FlowResult fl = exponential_flow(h, 0.2);
        double worst = 0.0;
        for (cplx z : fl.shrunk_domain.probe_points())
            worst = std::max(worst, std::abs(fl.map(z) - z / (1.0 - 0.2 * z)));
        rep.add(make_check("flow_quadratic_closed_form", worst, 0.0, worst, 1e-13));
    }

    {
        // RK4 against the closed form for h = z^2, t = 0.1, on |z| <= 0.5
        VectorField h = VectorField::from_evaluator(
            [](cplx z) { return z * z; }, disk);
        double t = 0.1, worst = 0.0;
        for (cplx z : circle_points(0.0, 0.5, 20)) {
            cplx num = detail::rk4_flow_value(h, z, t, 64).g;
            worst = std::max(worst, std::abs(num - z / (1.0 - t * z)));
        }
        rep.add(make_check("rk4_vs_closed_form", worst, 0.0, worst, 1e-10 * cfg.tol_scale));
    }

    VectorField hgen = VectorField::closed_form(
        [](cplx z) { return 0.4 / (2.0 - z); },
        [](cplx z) { return 0.4 / ((2.0 - z) * (2.0 - z)); }, disk);

    {
        double t1 = 0.15, t2 = 0.2;
        FlowResult f1 = exponential_flow(hgen, t1);
        FlowResult f2 = exponential_flow(hgen, t2);
        FlowResult f12 = exponential_flow(hgen, t1 + t2);
        double worst = 0.0;
        for (cplx z : circle_points(0.0, 0.5, 16))
            worst = std::max(worst, std::abs(f1.map(f2.map(z)) - f12.map(z)));
        rep.add(make_check("flow_semigroup", worst, 0.0, worst, 1e-9 * cfg.tol_scale));
    }

    {
        FlowResult fl = exponential_flow(hgen, 0.25);
        double resid = flow_commutation_residual(hgen, fl);
        rep.add(make_check("flow_commutation", resid, 0.0, resid, 1e-8 * cfg.tol_scale));
    }

    {
        // conjugation through a Mobius map: exp(t H_G h) = G o exp(t h) o G^{-1}
        ConformalMap G = ConformalMap::mobius(1.0, 0.3, 0.15, 1.0);
        VectorField pushed = pushforward(G, hgen);
        double t = 0.2;
        FlowResult direct = exponential_flow(pushed, t);
        FlowResult inner = exponential_flow(hgen, t);
        ConformalMap Ginv = G.inverse();
        double worst = 0.0;
        for (cplx z : circle_points(G(0.0), 0.25, 16))
            worst = std::max(worst, std::abs(direct.map(z) - G(inner.map(Ginv(z)))));
        rep.add(make_check("flow_conjugation", worst, 0.0, worst, 1e-9 * cfg.tol_scale));
    }
    return rep;
}

// ------------------------------- factorize --------------------------------

inline SuiteReport run_factorize(const ExperimentConfig& cfg) {
    SuiteReport rep;
    rep.suite = "factorize";
    AnnularSetup setup(cfg.fact_rho_a, cfg.fact_rho_b);

    {
        auto res = factorize([](cplx z) { return z; }, [](cplx) { return cplx(0.0); }, setup,
                             cfg.fact_tol);
        double worst = 0.0;
        for (cplx z : circle_points(0.0, setup.mid_measure, 16))
            worst = std::max(worst,
                             std::abs(res.g_b(z) - z) + std::abs(res.g_aprime(z) - z));
        rep.add(make_check("factorize_identity", worst,
                           static_cast<double>(res.iterations), worst, 1e-13));
    }

    {
        // g conformal on all of B: g_B = g and g_{A'} = id under the
        // infinity normalization
        auto g = [](cplx z) { return z + 0.01 * z * z; };
        auto res = factorize(g, [](cplx z) { return 0.01 * z * z; }, setup, cfg.fact_tol);
        double worst = 0.0;
        for (cplx z : circle_points(0.0, setup.mid_measure, 16)) {
            worst = std::max(worst, std::abs(res.g_b(z) - g(z)));
            worst = std::max(worst, std::abs(res.g_aprime(z) - z));
        }
        rep.add(make_check("factorize_entire", worst, 0.0, worst, 1e-11 * cfg.tol_scale));
    }

    const double p = cfg.fact_pole;
    auto g_pole = [p](cplx z) { return z + p / z; };
    auto h_pole = [p](cplx z) { return p / z; };
    {
        auto res = factorize(g_pole, h_pole, setup, cfg.fact_tol);
        rep.add(make_check("factorize_pole_composition", res.composition_residual, 0.0,
                           res.composition_residual, 1e-10 * cfg.tol_scale));
        double tails = std::max(res.g_b_tail_norm, res.g_aprime_tail_norm);
        rep.add(make_check("factorize_pole_tails", tails, 0.0, tails,
                           1e-9 * cfg.tol_scale));

        // idempotence: refactorizing g_{A'} o g_B returns the same pair
        auto composed = [&res](cplx z) { return res.g_aprime(res.g_b(z)); };
        auto res2 = factorize(composed, [&](cplx z) { return composed(z) - z; }, setup,
                              cfg.fact_tol);
        double worst = 0.0;
        for (cplx z : circle_points(0.0, setup.mid_measure, 16)) {
            worst = std::max(worst, std::abs(res.g_b(z) - res2.g_b(z)));
            worst = std::max(worst, std::abs(res.g_aprime(z) - res2.g_aprime(z)));
        }
        rep.add(make_check("factorize_idempotence", worst, 0.0, worst,
                           1e-9 * cfg.tol_scale));

        rep.add(make_check("smallness_report",
                           cplx(res.smallness.h_sup_x, res.smallness.q),
                           cplx(res.smallness.gamma_x, 0.0),
                           res.smallness.smallness_bound_met ? 0.0 : 1.0, 2.0));
    }

    {
        // mixed perturbation drives a genuinely multi-step iteration;
        // updates must contract geometrically
        const double q = cfg.fact_quad;
        auto g = [p, q](cplx z) { return z + p / z + q * z * z; };
        auto res = factorize(g, [p, q](cplx z) { return p / z + q * z * z; }, setup,
                             cfg.fact_tol);
        double worst_ratio = 0.0;
        for (size_t k = 0; k + 1 < res.update_history.size(); ++k) {
            if (res.update_history[k + 1] < 1e-15) break;
            worst_ratio = std::max(worst_ratio,
                                   res.update_history[k + 1] / res.update_history[k]);
        }
        rep.add(make_check("factorize_contraction_geometric", worst_ratio, 0.0, worst_ratio,
                           std::min(1.0, res.smallness.contraction_estimate)));
        rep.add(make_check("factorize_mixed_composition", res.composition_residual, 0.0,
                           res.composition_residual, 1e-10 * cfg.tol_scale));
    }

    {
        // first-order split matches the Cauchy projection of the field
        const double eps1 = 1e-3, eps2 = 5e-4;
        auto hfield = [](cplx z) { return 0.3 / z + 0.2 * z * z; };
        auto split_at = [&](double e) {
            auto res = factorize([&, e](cplx z) { return z + e * hfield(z); },
                                 [&, e](cplx z) { return e * hfield(z); }, setup, cfg.fact_tol);
            std::vector<cplx> vals;
            for (cplx z : circle_points(0.0, setup.mid_measure, 8))
                vals.push_back((res.g_b(z) - z) / e);
            return vals;
        };
        auto v1 = split_at(eps1);
        auto v2 = split_at(eps2);
        double worst = 0.0;
        int k = 0;
        for (cplx z : circle_points(0.0, setup.mid_measure, 8)) {
            cplx extrap = 2.0 * v2[k] - v1[k];  // remove the O(eps) term
            cplx oracle = cauchy_split_inside(hfield, setup, z);
            worst = std::max(worst, std::abs(extrap - oracle));
            ++k;
        }
        rep.add(make_check("factorize_first_order_split", worst, 0.0, worst,
                           1e-8 * cfg.tol_scale));
    }
    return rep;
}

// ------------------------------- schwarzian -------------------------------

inline SuiteReport run_schwarzian(const ExperimentConfig& cfg) {
    SuiteReport rep;
    rep.suite = "schwarzian";
    Rng rng(cfg.seed);

    {
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            cplx a(rng.uniform(0.5, 2.0), rng.uniform(-0.5, 0.5));
            cplx b(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
            cplx c(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2));
            ConformalMap G = ConformalMap::mobius(a, b, c, 1.0);
            cplx w = rng.in_disk(0.0, 0.9);
            if (std::abs(c * w + 1.0) < 0.4) continue;  // keep clear of the pole
            worst = std::max(worst, std::abs(schwarzian(G, w)));
        }
        rep.add(make_check("mobius_annihilation", worst, 0.0, worst,
                           1e-12 * cfg.tol_scale));
    }

    {
        ConformalMap square = ConformalMap::closed_form(
            [](cplx z) { return z * z; }, [](cplx z) { return 2.0 * z; },
            DomainDescriptor::sphere());
        cplx v = schwarzian(square, 1.0);
        rep.add(make_check("schwarzian_square_value", v, cplx(-1.5, 0.0),
                           std::abs(v - cplx(-1.5, 0.0)), 1e-11 * cfg.tol_scale));
    }

    {
        // cocycle {g1 o g2, w} = (dg2(w))^2 {g1, g2(w)} + {g2, w}
        double worst = 0.0;
        for (int k = 0; k < 8; ++k) {
            ConformalMap g2 = ConformalMap::polynomial_perturbation(
                {cplx(rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05)),
                 cplx(rng.uniform(-0.02, 0.02), rng.uniform(-0.02, 0.02))});
            ConformalMap g1 = ConformalMap::mobius(1.0, rng.in_disk(0.0, 0.5),
                                                   rng.in_disk(0.0, 0.15), 1.0);
            if (k % 2) std::swap(g1, g2);
            ConformalMap comp = ConformalMap::compose(g1, g2);
            cplx w = rng.in_disk(0.0, 0.8);
            cplx lhs = schwarzian(comp, w);
            cplx d2 = g2.deriv(w);
            cplx rhs = d2 * d2 * schwarzian(g1, g2(w)) + schwarzian(g2, w);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        rep.add(make_check("schwarzian_composition", worst, 0.0, worst,
                           1e-10 * cfg.tol_scale));
    }

    {
        // <T>_C via the uniformizer Schwarzian versus transporting <T>_D
        // through the perturbation: tests the cocycle through Newton inverses
        CentralCharge c{cfg.central_charge};
        ConformalMap G = ConformalMap::polynomial_perturbation({0.05});  // z + 0.05 z^2 on D
        ConformalMap cay = ConformalMap::mobius(1.0, -iu, 1.0, iu);      // H -> D
        ConformalMap unif = ConformalMap::compose(G, cay);               // H ->> C = G(D)
        cplx w = G(cplx(0.2, 0.1));
        cplx direct = onepoint_stress_tensor(unif, w, c);
        cplx t_disk = onepoint_stress_tensor(cay, G.invert(w, w), c);
        cplx through = transform_stress_tensor(G.inverse(), w, t_disk, c);
        rep.add(make_check("onepoint_dual_path", direct, through, std::abs(direct - through),
                           1e-8 * cfg.tol_scale));
    }
    return rep;
}

// ---------------------------- derivative-props ----------------------------

inline SuiteReport run_derivative_props(const ExperimentConfig& cfg) {
    SuiteReport rep;
    rep.suite = "derivative-props";
    DerivativeOptions opt;
    opt.eta0 = cfg.eta0;
    Rng rng(cfg.seed);

    Functional f = gff_functional();
    Configuration disk_sigma = gff_config({1.0, -1.0}, {cplx(0.1, 0.05), cplx(0.45, -0.2)});
    Configuration sigma = gff_config(cfg.charges, cfg.points);

    {
        // real-linearity of the directional derivative
        VectorField h1 = basis_field(1, Sign::plus);
        VectorField h2 = basis_field(2, Sign::minus);
        VectorField combo = h1.scaled(0.7).plus(h2.scaled(-1.3));
        cplx lhs =
            directional_derivative(f, disk_sigma, combo, 0.0, true, opt).value;
        cplx rhs = 0.7 * directional_derivative(f, disk_sigma, h1, 0.0, true, opt).value -
                   1.3 * directional_derivative(f, disk_sigma, h2, 0.0, true, opt).value;
        rep.add(make_check("directional_linearity", lhs, rhs, std::abs(lhs - rhs),
                           1e-7 * cfg.tol_scale));
    }

    {
        // anchor independence: same field, families anchored at inf, -3, -2i
        VectorField h = VectorField::closed_form(
            [](cplx z) { return cplx(0.3, 0.4) + 0.5 * z * z; },
            [](cplx z) { return cplx(1.0) * z; }, DomainDescriptor::unit_disk());
        cplx d_inf = directional_derivative(f, disk_sigma, h, 0.0, true, opt).value;
        cplx d_a = directional_derivative(f, disk_sigma, h, cplx(-3.0, 0.0), false, opt).value;
        cplx d_b = directional_derivative(f, disk_sigma, h, cplx(0.0, -2.0), false, opt).value;
        double resid = std::max(std::abs(d_inf - d_a), std::abs(d_inf - d_b));
        rep.add(make_check("anchor_independence", d_a, d_inf, resid, 1e-7 * cfg.tol_scale));
    }

    {
        // enlarging the differentiability domain: anchors inside the excised
        // neighborhood of w give the same regularised derivative
        cplx w(1.8, 0.9);
        DerivativeOptions opt2 = opt;
        opt2.anchor = w + cplx(0.12, -0.08);
        cplx d1 = holo_derivative_point(f, sigma, w, opt).value;
        cplx d2 = holo_derivative_point(f, sigma, w, opt2).value;
        rep.add(make_check("domain_enlargement", d2, d1, std::abs(d1 - d2),
                           1e-7 * cfg.tol_scale));
    }

    {
        // series form against the point form at |z| = 2
        HoloDerivativeTail tail = holo_derivative_series(f, disk_sigma, 18, 1.0, opt);
        cplx z(1.55, 1.26);  // |z| ~ 2
        cplx from_series = tail.evaluate(z);
        cplx from_point = holo_derivative_point(f, disk_sigma, z, opt).value;
        rep.add(make_check("series_vs_point", from_series, from_point,
                           std::abs(from_series - from_point), 1e-6 * cfg.tol_scale));
        rep.add(make_check("series_not_diverging", tail.diverging ? 1.0 : 0.0, 0.0,
                           tail.diverging ? 1.0 : 0.0, 0.5));
    }

    {
        // scale relation: the series through the radius-0.8 disk basis
        HoloDerivativeTail t1 = holo_derivative_series(f, disk_sigma, 10, 1.0, opt);
        HoloDerivativeTail t2 = holo_derivative_series(f, disk_sigma, 10, 0.8, opt);
        double worst = 0.0;
        for (cplx z : circle_points(0.0, 2.0, 8))
            worst = std::max(worst, std::abs(t1.evaluate(z) - t2.evaluate(z)));
        rep.add(make_check("scale_relation", worst, 0.0, worst, 1e-7 * cfg.tol_scale));
    }

    {
        cplx w(1.7, 1.2);
        double r1 = chain_rule_check(
            f, [](double x) { return x; }, [](double) { return 1.0; }, sigma, w, opt);
        double r2 = chain_rule_check(
            f, [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); },
            sigma, w, opt);
        double r3 = chain_rule_check(
            f, [](double x) { return x * x; }, [](double x) { return 2.0 * x; }, sigma, w,
            opt);
        rep.add(make_check("chain_rule_identity", r1, 0.0, r1, 1e-9 * cfg.tol_scale));
        rep.add(make_check("chain_rule_exp", r2, 0.0, r2, 1e-6 * cfg.tol_scale));
        rep.add(make_check("chain_rule_quadratic", r3, 0.0, r3, 1e-6 * cfg.tol_scale));
    }

    {
        cplx w(-1.3, 1.6);
        double resid = additivity_check(f, sigma, w, opt);
        rep.add(make_check("sphere_additivity", resid, 0.0, resid, 1e-6 * cfg.tol_scale));
    }

    {
        // two-phase form against the 16-point theta quadrature
        cplx w(1.9, 0.8);
        cplx a = holo_derivative_point(f, sigma, w, opt).value;
        cplx b = holo_derivative_point_quadrature(f, sigma, w, 16, opt).value;
        rep.add(make_check("two_phase_vs_quadrature", a, b, std::abs(a - b),
                           1e-7 * cfg.tol_scale));
    }

    {
        // real functional: Delta-bar = conj(Delta)
        cplx w(2.1, -0.7);
        cplx holo = holo_derivative_point(f, sigma, w, opt).value;
        cplx anti = antiholo_derivative_point(f, sigma, w, opt).value;
        rep.add(make_check("antiholo_conjugation", anti, std::conj(holo),
                           std::abs(anti - std::conj(holo)), 1e-8 * cfg.tol_scale));
    }

    {
        // error estimates bound the cross-method discrepancy in >= 95% of trials
        int covered = 0;
        const int trials = 40;
        for (int k = 0; k < trials; ++k) {
            cplx z1 = rng.in_disk(0.0, 0.4);
            cplx z2 = z1 + std::polar(rng.uniform(0.6, 1.2), rng.uniform(0.0, 2.0 * pi));
            Configuration s = gff_config({1.0, -1.0}, {z1, z2});
            cplx w = z1 + std::polar(rng.uniform(2.0, 3.5), rng.uniform(0.0, 2.0 * pi));
            HoloDerivative a = holo_derivative_point(f, s, w, opt);
            HoloDerivative b = holo_derivative_point_quadrature(f, s, w, 8, opt);
            if (std::abs(a.value - b.value) <= a.error_estimate + b.error_estimate + 1e-12)
                ++covered;
        }
        double coverage = static_cast<double>(covered) / trials;
        rep.add(make_check("richardson_coverage", coverage, 1.0, 1.0 - coverage, 0.05));
    }

    {
        // continuous-dual checks: biorthogonality and reconstruction decay
        double worst = 0.0;
        for (int n = 0; n <= 12; ++n)
            for (Sign s : {Sign::plus, Sign::minus})
                for (Sign t : {Sign::plus, Sign::minus}) {
                    double v = basis_coefficient(basis_field(n, s), n, t);
                    double expect = (s == t) ? 1.0 : 0.0;
                    worst = std::max(worst, std::abs(v - expect));
                }
        rep.add(make_check("coeff_biorthogonality", worst, 0.0, worst,
                           1e-12 * cfg.tol_scale));

        VectorField h = VectorField::closed_form(
            [](cplx z) { return 1.0 / (2.0 - z); },
            [](cplx z) { return 1.0 / ((2.0 - z) * (2.0 - z)); },
            DomainDescriptor::unit_disk());
        auto sup_err = [&](int N) {
            VectorField r = reconstruct(h, N);
            double worst_err = 0.0;
            for (cplx z : circle_points(0.0, 0.5, 64))
                worst_err = std::max(worst_err, std::abs(h(z) - r(z)));
            return worst_err;
        };
        // each extra order shrinks the sup error by 4 (coefficient and |z|^n
        // both halve); require the observed ratio within a factor 2 of that
        double worst_ratio_dev = 0.0;
        double prev = sup_err(6);
        for (int N = 7; N <= 12; ++N) {
            double cur = sup_err(N);
            double ratio = prev / cur;
            worst_ratio_dev = std::max(worst_ratio_dev,
                                       std::max(ratio / 4.0, 4.0 / ratio));
            prev = cur;
        }
        rep.add(make_check("reconstruct_geometric_decay", worst_ratio_dev, 1.0,
                           worst_ratio_dev, 2.0));
        double e30 = sup_err(30);
        rep.add(make_check("reconstruct_n30", e30, 0.0, e30, 1e-8));
    }

    {
        // connection laws
        cplx w(0.15, 0.55);
        ConformalMap G = ConformalMap::mobius(1.3, cplx(0.2, 0.1), cplx(0.05, -0.02), 1.0);
        cplx theta_mobius = connection_theta(f, disk_sigma, G, w, opt);
        double scale = 1.0 + std::abs(holo_derivative_point(f, disk_sigma, w, opt).value);
        rep.add(make_check("connection_mobius_zero", theta_mobius, 0.0,
                           std::abs(theta_mobius) / scale, 1e-6 * cfg.tol_scale));

        cplx theta_id = connection_theta(f, disk_sigma, ConformalMap::identity(), w, opt);
        rep.add(make_check("connection_identity_zero", theta_id, 0.0, std::abs(theta_id),
                           1e-9 * cfg.tol_scale));

        // composition rule for the connection
        ConformalMap g2 = ConformalMap::polynomial_perturbation({cplx(0.04, 0.01)});
        ConformalMap g1 = ConformalMap::polynomial_perturbation({cplx(-0.02, 0.03)});
        ConformalMap comp = ConformalMap::compose(g1, g2);
        cplx lhs = connection_theta(f, disk_sigma, comp, w, opt);
        cplx term1 = connection_theta(f, disk_sigma, g2, w, opt);
        Configuration moved = apply_action(g2, disk_sigma);
        Functional fg2 = pullback_functional(f, g2);
        cplx dg2 = g2.deriv(w);
        cplx term2 = dg2 * dg2 * connection_theta(fg2, moved, g1, g2(w), opt);
        rep.add(make_check("connection_composition", lhs, term1 + term2,
                           std::abs(lhs - term1 - term2), 1e-5 * cfg.tol_scale));

        // gamma vanishes for Mobius transport of the invariant functional
        cplx gam = gamma_transport(f, sigma, ConformalMap::scaling(1.4), cplx(1.8, 1.1), opt);
        rep.add(make_check("gamma_mobius_invariant_zero", gam, 0.0, std::abs(gam),
                           1e-6 * cfg.tol_scale));
    }
    return rep;
}

}  // namespace suites

inline SuiteReport run_suite(const std::string& name, const ExperimentConfig& cfg) {
    if (name == "ward-sphere") return suites::run_ward_sphere(cfg);
    if (name == "ward-halfplane") return suites::run_ward_halfplane(cfg);
    if (name == "drc") return suites::run_drc(cfg);
    if (name == "flow") return suites::run_flow(cfg);
    if (name == "factorize") return suites::run_factorize(cfg);
    if (name == "schwarzian") return suites::run_schwarzian(cfg);
    if (name == "derivative-props") return suites::run_derivative_props(cfg);
    if (name == "all") {
        SuiteReport rep;
        rep.suite = "all";
        for (const auto& [n, desc] : list_suites()) {
            if (n == "all") continue;
            rep.merge(run_suite(n, cfg));
        }
        return rep;
    }
    throw config_error("unknown suite: " + name);
}

// Parse the JSON experiment configuration (all keys optional).
inline ExperimentConfig parse_config(const nlohmann::json& j) {
    ExperimentConfig cfg;
    if (j.contains("suite")) cfg.suite = j.at("suite").get<std::string>();
    if (j.contains("eta0")) cfg.eta0 = j.at("eta0").get<double>();
    if (j.contains("tol_scale")) cfg.tol_scale = j.at("tol_scale").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("w_count")) cfg.w_count = j.at("w_count").get<int>();
    if (j.contains("central_charge")) cfg.central_charge = j.at("central_charge").get<double>();
    if (j.contains("delta")) cfg.delta_h = j.at("delta").get<double>();
    if (j.contains("z")) cfg.z_h = suites::parse_cplx(j.at("z"));
    if (j.contains("charges")) cfg.charges = j.at("charges").get<std::vector<double>>();
    if (j.contains("points")) {
        cfg.points.clear();
        for (const auto& p : j.at("points")) cfg.points.push_back(suites::parse_cplx(p));
    }
    if (j.contains("drc_eps")) cfg.drc_eps = j.at("drc_eps").get<std::vector<double>>();
    if (j.contains("factorize")) {
        const auto& fj = j.at("factorize");
        if (fj.contains("rho_a")) cfg.fact_rho_a = fj.at("rho_a").get<double>();
        if (fj.contains("rho_b")) cfg.fact_rho_b = fj.at("rho_b").get<double>();
        if (fj.contains("pole")) cfg.fact_pole = fj.at("pole").get<double>();
        if (fj.contains("quad")) cfg.fact_quad = fj.at("quad").get<double>();
        if (fj.contains("tol")) cfg.fact_tol = fj.at("tol").get<double>();
    }
    // eager validation so malformed configs fail before any computation
    if (cfg.eta0 <= 0.0) throw config_error("eta0 must be positive");
    if (cfg.tol_scale <= 0.0) throw config_error("tol_scale must be positive");
    if (!(0.0 < cfg.fact_rho_a && cfg.fact_rho_a < cfg.fact_rho_b))
        throw config_error("factorize requires 0 < rho_a < rho_b");
    for (double e : cfg.drc_eps)
        if (e <= 0.0) throw config_error("drc epsilon values must be positive");
    if (cfg.charges.size() != cfg.points.size())
        throw config_error("charges and points must have equal length");
    return cfg;
}

inline ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot read config file: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("config parse error: ") + e.what());
    }
    return parse_config(j);
}

}  // namespace confcalc
