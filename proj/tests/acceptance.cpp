// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are the contract; they are pinned here and not
// configurable.

#include <cstdio>
#include <string>
#include <vector>

#include "confcalc/confcalc.hpp"

using namespace confcalc;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, double residual, double tol) {
    bool pass = residual <= tol;
    if (!pass) ++failures;
    std::printf("[%s] criterion %2d: %-58s residual=%.3e tol=%.1e\n", pass ? "PASS" : "FAIL",
                number, label.c_str(), residual, tol);
}

Configuration two_point() {
    return Configuration::on_sphere({{0.0, PrimaryFieldData::gff(1.0), 1.0},
                                     {1.0, PrimaryFieldData::gff(-1.0), 1.0}});
}

Configuration four_point() {
    return Configuration::on_sphere({{cplx(0.3, 0.2), PrimaryFieldData::gff(1.0), 1.0},
                                     {cplx(1.1, -0.4), PrimaryFieldData::gff(-1.0), 1.0},
                                     {cplx(-0.8, 0.9), PrimaryFieldData::gff(1.0), 1.0},
                                     {cplx(-0.5, -0.6), PrimaryFieldData::gff(-1.0), 1.0}});
}

void sphere_ward() {
    Functional f = gff_functional();
    double worst = 0.0;
    for (const Configuration& sigma : {two_point(), four_point()}) {
        auto ws = suites::w_ring_grid(sigma, 20);
        for (cplx w : ws)
            worst = std::max(worst, ward_vs_derivative(f, sigma, w).relative_residual);
    }
    criterion(1, "sphere Ward identity, two- and four-point, 20-point w grid", worst, 1e-6);
}

void joukowsky_limit() {
    Functional f = gff_functional();
    Configuration sigma = two_point();
    std::vector<double> eps{0.1, 0.05};
    double worst = 0.0;
    for (cplx w : suites::w_ring_grid(sigma, 10, 2.0, 3.0)) {
        cplx v = joukowsky_stress_extraction(f, sigma, w, eps);
        cplx oracle = ward_rhs_sphere(w, sigma);
        worst = std::max(worst, std::abs(v - oracle) / (1.0 + std::abs(oracle)));
    }
    criterion(2, "Joukowsky angular average matches the Ward oracle, 10 w points", worst,
              1e-4);
}

void halfplane_ward() {
    Functional f = halfplane_onepoint_functional();
    Configuration sigma =
        Configuration::on_halfplane({{cplx(0.0, 1.0), PrimaryFieldData::primary(0.5, 0.5), 1.0}});
    double worst = 0.0;
    for (cplx w : suites::halfplane_w_grid(10)) {
        if (std::abs(w - cplx(0.0, 1.0)) < 0.3) w += cplx(0.35, 0.15);
        WardComparison cmp = ward_vs_derivative(f, sigma, w);
        worst = std::max(worst, cmp.relative_residual);
    }
    criterion(3, "half-plane Ward identity, delta = 1/2 at z = i, 10 w points", worst, 1e-5);
    double refl = reflection_decomposition_residual(f, sigma, cplx(0.5, 0.8));
    criterion(3, "reflection decomposition (boundary vs image points)", refl, 1e-5);
}

void mobius_covariance() {
    Functional f = gff_functional();
    Configuration sigma = two_point();
    Configuration exterior = Configuration::on_sphere(
        {{cplx(2.0, 0.3), PrimaryFieldData::gff(1.0), 1.0},
         {cplx(-0.4, 2.2), PrimaryFieldData::gff(-1.0), 1.0}});
    double worst = 0.0;
    worst = std::max(worst,
                     check_mobius_covariance(f, sigma, ConformalMap::scaling(1.7), cplx(1.6, 1.1)));
    worst = std::max(worst, check_mobius_covariance(
                                f, sigma, ConformalMap::scaling(std::polar(1.0, 0.8)),
                                cplx(1.6, 1.1)));
    worst = std::max(worst, check_mobius_covariance(f, sigma,
                                                    ConformalMap::translation(cplx(0.4, -0.3)),
                                                    cplx(1.6, 1.1)));
    worst = std::max(worst, check_mobius_covariance(f, exterior, ConformalMap::inversion(),
                                                    cplx(1.3, -1.4)));
    criterion(4, "Mobius covariance: dilation, rotation, translation, inversion", worst,
              1e-6);
}

void connection_laws() {
    Functional f = gff_functional();
    Configuration sigma = Configuration::on_sphere(
        {{cplx(0.1, 0.05), PrimaryFieldData::gff(1.0), 1.0},
         {cplx(0.45, -0.2), PrimaryFieldData::gff(-1.0), 1.0}});
    cplx w(0.15, 0.55);
    ConformalMap G = ConformalMap::mobius(1.3, cplx(0.2, 0.1), cplx(0.05, -0.02), 1.0);
    criterion(5, "connection vanishes for Mobius maps",
              std::abs(connection_theta(f, sigma, G, w)), 1e-6);

    ConformalMap g2 = ConformalMap::polynomial_perturbation({cplx(0.04, 0.01)});
    ConformalMap g1 = ConformalMap::polynomial_perturbation({cplx(-0.02, 0.03)});
    cplx lhs = connection_theta(f, sigma, ConformalMap::compose(g1, g2), w);
    cplx term1 = connection_theta(f, sigma, g2, w);
    Configuration moved = apply_action(g2, sigma);
    cplx dg2 = g2.deriv(w);
    cplx term2 =
        dg2 * dg2 * connection_theta(pullback_functional(f, g2), moved, g1, g2(w));
    criterion(5, "connection composition rule for a non-Mobius pair",
              std::abs(lhs - term1 - term2), 1e-5);
}

void engine_self_consistency() {
    Functional f = gff_functional();
    Configuration disk_sigma = Configuration::on_sphere(
        {{cplx(0.1, 0.05), PrimaryFieldData::gff(1.0), 1.0},
         {cplx(0.45, -0.2), PrimaryFieldData::gff(-1.0), 1.0}});
    Configuration sigma = two_point();

    VectorField h = VectorField::closed_form(
        [](cplx z) { return cplx(0.3, 0.4) + 0.5 * z * z; }, [](cplx z) { return z; },
        DomainDescriptor::unit_disk());
    cplx d_inf = directional_derivative(f, disk_sigma, h, 0.0, true).value;
    cplx d_a = directional_derivative(f, disk_sigma, h, cplx(-3.0, 0.0), false).value;
    cplx d_b = directional_derivative(f, disk_sigma, h, cplx(0.0, -2.0), false).value;
    criterion(6, "anchor independence over {inf, -3, -2i}",
              std::max(std::abs(d_inf - d_a), std::abs(d_inf - d_b)), 1e-7);

    HoloDerivativeTail tail = holo_derivative_series(f, disk_sigma, 18);
    cplx z(1.55, 1.26);
    criterion(6, "series form vs point form at |z| = 2",
              std::abs(tail.evaluate(z) - holo_derivative_point(f, disk_sigma, z).value),
              1e-6);

    HoloDerivativeTail t1 = holo_derivative_series(f, disk_sigma, 10, 1.0);
    HoloDerivativeTail t2 = holo_derivative_series(f, disk_sigma, 10, 0.8);
    double worst_scale = 0.0;
    for (cplx u : circle_points(0.0, 2.0, 8))
        worst_scale = std::max(worst_scale, std::abs(t1.evaluate(u) - t2.evaluate(u)));
    criterion(6, "scale relation between the disk and the 0.8-disk series", worst_scale,
              1e-7);

    cplx w(1.7, 1.2);
    double chain = std::max(
        chain_rule_check(
            f, [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); },
            sigma, w),
        chain_rule_check(
            f, [](double x) { return x * x; }, [](double x) { return 2.0 * x; }, sigma, w));
    criterion(6, "chain rule for exp and square", chain, 1e-6);
    criterion(6, "additivity over marked points", additivity_check(f, sigma, cplx(-1.3, 1.6)),
              1e-6);
}

void flows() {
    DomainDescriptor disk = DomainDescriptor::unit_disk();
    VectorField hgen = VectorField::closed_form(
        [](cplx z) { return 0.4 / (2.0 - z); },
        [](cplx z) { return 0.4 / ((2.0 - z) * (2.0 - z)); }, disk);

    FlowResult f1 = exponential_flow(hgen, 0.15);
    FlowResult f2 = exponential_flow(hgen, 0.2);
    FlowResult f12 = exponential_flow(hgen, 0.35);
    double semi = 0.0;
    for (cplx z : circle_points(0.0, 0.5, 12))
        semi = std::max(semi, std::abs(f1.map(f2.map(z)) - f12.map(z)));
    criterion(7, "flow semigroup g_t o g_t' = g_{t+t'}", semi, 1e-9);

    criterion(7, "flow commutation h o g_t = h dg_t",
              flow_commutation_residual(hgen, exponential_flow(hgen, 0.25)), 1e-8);

    VectorField hsq = VectorField::from_evaluator([](cplx z) { return z * z; }, disk);
    double rk4 = 0.0;
    for (cplx z : circle_points(0.0, 0.5, 16))
        rk4 = std::max(rk4,
                       std::abs(detail::rk4_flow_value(hsq, z, 0.1, 64).g - z / (1.0 - 0.1 * z)));
    criterion(7, "RK4 flow vs closed form for h = z^2", rk4, 1e-10);
}

void factorization() {
    AnnularSetup setup(0.5, 1.5);
    auto g = [](cplx z) { return z + 0.01 / z; };
    auto res = factorize(g, [](cplx z) { return 0.01 / z; }, setup);
    criterion(8, "factorization composition residual for z + 0.01/z",
              res.composition_residual, 1e-10);
    criterion(8, "factor analyticity tails",
              std::max(res.g_b_tail_norm, res.g_aprime_tail_norm), 1e-9);

    auto gm = [](cplx z) { return z + 0.01 / z + 0.005 * z * z; };
    auto resm = factorize(gm, [](cplx z) { return 0.01 / z + 0.005 * z * z; }, setup);
    double worst_ratio = 0.0;
    for (size_t k = 0; k + 1 < resm.update_history.size(); ++k) {
        if (resm.update_history[k + 1] < 1e-15) break;
        worst_ratio =
            std::max(worst_ratio, resm.update_history[k + 1] / resm.update_history[k]);
    }
    criterion(8, "geometric contraction of iteration updates", worst_ratio, 0.5);

    auto composed = [&res](cplx z) { return res.g_aprime(res.g_b(z)); };
    auto res2 = factorize(composed, [&](cplx z) { return composed(z) - z; }, setup);
    double idem = 0.0;
    for (cplx z : circle_points(0.0, setup.mid_measure, 16)) {
        idem = std::max(idem, std::abs(res.g_b(z) - res2.g_b(z)));
        idem = std::max(idem, std::abs(res.g_aprime(z) - res2.g_aprime(z)));
    }
    criterion(8, "idempotent refactorization", idem, 1e-9);
}

void schwarzian_suite() {
    Rng rng(0);
    double annih = 0.0;
    for (int k = 0; k < 100; ++k) {
        cplx a(rng.uniform(0.5, 2.0), rng.uniform(-0.5, 0.5));
        cplx b(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        cplx c(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2));
        ConformalMap G = ConformalMap::mobius(a, b, c, 1.0);
        cplx w = rng.in_disk(0.0, 0.9);
        if (std::abs(c * w + 1.0) < 0.4) continue;
        annih = std::max(annih, std::abs(schwarzian(G, w)));
    }
    criterion(9, "Schwarzian annihilates 100 random Mobius maps", annih, 1e-12);

    double comp = 0.0;
    for (int k = 0; k < 8; ++k) {
        ConformalMap g2 = ConformalMap::polynomial_perturbation(
            {cplx(rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05))});
        ConformalMap g1 =
            ConformalMap::mobius(1.0, rng.in_disk(0.0, 0.5), rng.in_disk(0.0, 0.15), 1.0);
        ConformalMap cc = ConformalMap::compose(g1, g2);
        cplx w = rng.in_disk(0.0, 0.8);
        cplx d2 = g2.deriv(w);
        comp = std::max(comp, std::abs(schwarzian(cc, w) - d2 * d2 * schwarzian(g1, g2(w)) -
                                       schwarzian(g2, w)));
    }
    criterion(9, "Schwarzian composition identity", comp, 1e-10);

    CentralCharge c{1.0};
    ConformalMap G = ConformalMap::polynomial_perturbation({0.05});
    ConformalMap cay = ConformalMap::mobius(1.0, -iu, 1.0, iu);
    ConformalMap unif = ConformalMap::compose(G, cay);
    cplx w = G(cplx(0.2, 0.1));
    cplx direct = onepoint_stress_tensor(unif, w, c);
    cplx through = transform_stress_tensor(G.inverse(), w,
                                           onepoint_stress_tensor(cay, G.invert(w, w), c), c);
    criterion(9, "T one-point dual-path consistency", std::abs(direct - through), 1e-8);
}

void continuous_duals() {
    double bio = 0.0;
    for (int n = 0; n <= 12; ++n)
        for (Sign s : {Sign::plus, Sign::minus})
            for (Sign t : {Sign::plus, Sign::minus})
                bio = std::max(bio, std::abs(basis_coefficient(basis_field(n, s), n, t) -
                                             (s == t ? 1.0 : 0.0)));
    criterion(10, "coefficient functionals biorthogonal to the basis", bio, 1e-12);

    VectorField h = VectorField::closed_form(
        [](cplx z) { return 1.0 / (2.0 - z); },
        [](cplx z) { return 1.0 / ((2.0 - z) * (2.0 - z)); }, DomainDescriptor::unit_disk());
    auto sup_err = [&](int N) {
        VectorField r = reconstruct(h, N);
        double worst = 0.0;
        for (cplx z : circle_points(0.0, 0.5, 64))
            worst = std::max(worst, std::abs(h(z) - r(z)));
        return worst;
    };
    // successive orders shrink the sup error by 4x; demand that within 2x
    double dev = 0.0;
    double prev = sup_err(6);
    for (int N = 7; N <= 12; ++N) {
        double cur = sup_err(N);
        double ratio = prev / cur;
        dev = std::max(dev, std::max(ratio / 4.0, 4.0 / ratio));
        prev = cur;
    }
    criterion(10, "reconstruction decay matches the geometric oracle within 2x", dev, 2.0);
}

}  // namespace

int main() {
    sphere_ward();
    joukowsky_limit();
    halfplane_ward();
    mobius_covariance();
    connection_laws();
    engine_self_consistency();
    flows();
    factorization();
    schwarzian_suite();
    continuous_duals();
    std::printf("acceptance: %s\n", failures == 0 ? "ALL PASS" : "FAILURES");
    return failures == 0 ? 0 : 1;
}
