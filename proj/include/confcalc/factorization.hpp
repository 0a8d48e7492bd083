#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "confcalc/conformal_map.hpp"
#include "confcalc/contour.hpp"
#include "confcalc/core.hpp"
#include "confcalc/domain.hpp"

namespace confcalc {

// Geometry for factorizing a near-identity map on the annulus rho_A < |z| < rho_B
// into g = g_{A'} o g_B with g_B conformal on B = {|z| < rho_B} and g_{A'}
// conformal on A' = C-hat \ g_B(C-hat \ A), A = {|z| > rho_A} u {inf}.
struct AnnularSetup {
    double rho_a = 0.5;
    double rho_b = 1.5;
    double iteration_radius = 0.0;    // rho~_B, in (rho_a, rho_b)
    double inner_measure = 0.0;       // rho~_A: contour for the g_{A'} integral
    double mid_measure = 0.0;         // composition-residual circle
    int nodes = 256;

    AnnularSetup() { finish(); }
    AnnularSetup(double ra, double rb, double iter_radius = 0.0, int node_count = 256)
        : rho_a(ra), rho_b(rb), iteration_radius(iter_radius), nodes(node_count) {
        finish();
    }

    void finish() {
        if (!(0.0 < rho_a && rho_a < rho_b))
            throw config_error("annular setup requires 0 < rho_A < rho_B");
        double margin = (rho_b - rho_a) / 4.0;
        if (iteration_radius <= 0.0) iteration_radius = rho_b - margin;
        if (!(rho_a < iteration_radius && iteration_radius < rho_b))
            throw config_error("iteration contour must lie inside the annulus");
        if (inner_measure <= 0.0) inner_measure = rho_a + margin;
        if (mid_measure <= 0.0) mid_measure = 0.5 * (rho_a + rho_b);
    }
};

// Report of the paper-style sufficient smallness bound. The bound is very
// conservative; factorization typically converges far outside it, so failing
// the bound is a warning, not an error.
struct SmallnessReport {
    double h_sup_x = 0.0;      // sup of |h| over the widened contour X
    double q = 0.0;            // inf of the kernel-bound function on B~
    double gamma_x = 0.0;      // 4 L_X / a^2
    double contour_length = 0.0;
    double contraction_estimate = 0.0;  // gamma_X |h|_X / q
    bool contraction_bound_met = false;  // gamma_X |h|_X < q
    bool smallness_bound_met = false;    // |h|_X < q / (gamma_X + 1/R)
};

template <typename H>
SmallnessReport smallness_diagnostics(H&& h, const AnnularSetup& setup) {
    const double rta = setup.inner_measure;
    const double rtb = setup.iteration_radius;
    const double S = std::min(setup.rho_b - rtb, rta - setup.rho_a);
    const double a = S / 2.0;
    const double calR = S - a;

    const double x_in = rta - (a / 2.0 + calR);
    const double x_out = rtb + (a / 2.0 + calR);

    SmallnessReport rep;
    for (cplx z : circle_points(0.0, x_in, 128))
        rep.h_sup_x = std::max(rep.h_sup_x, std::abs(h(z)));
    for (cplx z : circle_points(0.0, x_out, 128))
        rep.h_sup_x = std::max(rep.h_sup_x, std::abs(h(z)));

    const double len_b = 2.0 * pi * rtb;
    const double len_a = 2.0 * pi * rta;
    const double d = rtb - rta;
    const double mid = 0.5 * (rta + rtb);
    rep.q = std::min((setup.rho_b - mid) / len_b, (d / 2.0) / (len_a + d / 2.0));
    rep.contour_length = 2.0 * pi * (x_in + x_out);
    rep.gamma_x = 4.0 * rep.contour_length / (a * a);
    rep.contraction_estimate = rep.gamma_x * rep.h_sup_x / rep.q;
    rep.contraction_bound_met = rep.contraction_estimate < 1.0;
    rep.smallness_bound_met = rep.h_sup_x < rep.q / (rep.gamma_x + 1.0 / calR);
    return rep;
}

struct FactorizationResult {
    ConformalMap g_b;       // conformal on B
    ConformalMap g_aprime;  // conformal on A', normalized g_{A'}(w) = w + O(1/w)
    int iterations = 0;
    double final_update = 0.0;
    double composition_residual = 0.0;
    double g_b_tail_norm = 0.0;       // negative Laurent modes of g_B - id
    double g_aprime_tail_norm = 0.0;  // modes n >= 0 of g_{A'} - id
    SmallnessReport smallness;
    std::vector<double> update_history;
};

namespace detail {

// Power series sum_{k} c_k (z / scale)^k and its derivative.
struct ScaledSeries {
    std::vector<cplx> coeffs;
    double scale = 1.0;

    cplx eval(cplx z) const {
        cplx u = z / scale, acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
        return acc;
    }
    cplx deriv(cplx z) const {
        cplx u = z / scale, acc = 0.0;
        double k = static_cast<double>(coeffs.size()) - 1.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it, k -= 1.0)
            if (k >= 1.0) acc = acc * u + k * (*it);
        return acc / scale;
    }
};

}  // namespace detail

// Appendix-style factorization by the fixed-point iteration
//   R_{n+1}(z) = - oint_{dB~} dy h(y + R_n(y)) / (y - z),  R_0 = 0,
// realized spectrally: the right-hand side is minus the nonnegative-mode
// Cauchy projection of h o (id + R_n) on the iteration circle. Then
// g_B = (id + R_inf)^{-1} (Newton) and
//   g_{A'}(z) = z + oint_{dA^-} dy dg_B(y) (g(y) - y) / (g_B(y) - z),
// the contour winding positively around the interior of A (clockwise in the
// plane, since infinity lies in A).
template <typename G, typename H>
FactorizationResult factorize(G&& g, H&& h, const AnnularSetup& setup, double tol = 1e-13) {
    const int m = setup.nodes;
    const double rt = setup.iteration_radius;

    FactorizationResult out;
    out.smallness = smallness_diagnostics(h, setup);

    // fixed point for R on the iteration circle
    std::vector<cplx> nodes(m), R(m, 0.0), values(m);
    for (int j = 0; j < m; ++j) nodes[j] = rt * std::polar(1.0, 2.0 * pi * j / m);
    std::vector<cplx> modes(m / 2, 0.0);
    int iter = 0;
    double update = std::numeric_limits<double>::infinity();
    for (; iter < 100; ++iter) {
        for (int j = 0; j < m; ++j) {
            values[j] = h(nodes[j] + R[j]);
            if (!is_finite(values[j]))
                throw no_convergence_error("iteration left the annulus of analyticity",
                                           nodes[j] + R[j], update);
        }
        for (int k = 0; k < m / 2; ++k) {
            cplx acc = 0.0;
            for (int j = 0; j < m; ++j)
                acc += values[j] * std::polar(1.0, -2.0 * pi * k * j / m);
            modes[k] = -acc / static_cast<double>(m);
        }
        update = 0.0;
        for (int j = 0; j < m; ++j) {
            cplx rn = 0.0;
            for (int k = m / 2 - 1; k >= 0; --k)
                rn = rn * std::polar(1.0, 2.0 * pi * j / m) + modes[k];
            update = std::max(update, std::abs(rn - R[j]));
            R[j] = rn;
        }
        out.update_history.push_back(update);
        if (update < tol) break;
    }
    if (update >= tol)
        throw no_convergence_error("factorization iteration did not converge", 0.0, update);
    out.iterations = iter + 1;
    out.final_update = update;

    auto series = std::make_shared<detail::ScaledSeries>();
    series->coeffs = modes;
    series->scale = rt;

    // g_B^{-1} = id + R;  g_B by Newton with exact derivative
    ConformalMap gb_inv = ConformalMap::closed_form(
        [series](cplx z) { return z + series->eval(z); },
        [series](cplx z) { return 1.0 + series->deriv(z); },
        DomainDescriptor::disk(0.0, setup.rho_b));
    out.g_b = gb_inv.inverse(DomainDescriptor::disk(0.0, setup.rho_b));

    // g_{A'}(z) = z + sum_k c_k z^{-k-1}, the Laurent expansion of the contour
    // integral about infinity:
    //   c_k = oint_{|y| = rho~_A} dy dg_B(y) (g(y) - y) g_B(y)^k
    // (clockwise = positively around the interior of A). The series converges
    // for |z| above the contour; an inner band down toward rho_A is covered by
    // the Cauchy node sum on a lower contour.
    const double ra = setup.inner_measure;
    const double ra_low = setup.rho_a + 0.1 * (setup.inner_measure - setup.rho_a);
    auto tail = std::make_shared<std::vector<cplx>>(m / 2, 0.0);
    {
        std::vector<cplx> ynodes = circle_points(0.0, ra, m);
        for (int j = 0; j < m; ++j) {
            cplx y = ynodes[j];
            cplx gby = out.g_b(y);
            cplx base = (1.0 / (1.0 + series->deriv(gby))) * (g(y) - y) * y /
                        static_cast<double>(m);
            cplx pow = 1.0;
            for (int k = 0; k < m / 2; ++k) {
                (*tail)[k] += base * pow;
                pow *= gby;
            }
        }
    }
    auto low_nodes = std::make_shared<std::vector<cplx>>(circle_points(0.0, ra_low, m));
    auto low_weights = std::make_shared<std::vector<cplx>>(m);
    auto low_gb = std::make_shared<std::vector<cplx>>(m);
    for (int j = 0; j < m; ++j) {
        cplx y = (*low_nodes)[j];
        (*low_gb)[j] = out.g_b(y);
        (*low_weights)[j] = -(1.0 / (1.0 + series->deriv((*low_gb)[j]))) * (g(y) - y) * y /
                            static_cast<double>(m);
    }
    const double series_min = 1.15 * ra;
    auto aprime_eval = [tail, low_nodes, low_weights, low_gb, series_min](cplx z) {
        if (std::abs(z) >= series_min) {
            cplx inv = 1.0 / z, acc = 0.0;
            for (auto it = tail->rbegin(); it != tail->rend(); ++it) acc = (acc + *it) * inv;
            return z + acc;
        }
        cplx acc = 0.0;
        for (size_t j = 0; j < low_nodes->size(); ++j)
            acc += (*low_weights)[j] / ((*low_gb)[j] - z);
        return z + acc;
    };
    auto aprime_deriv = [tail, low_nodes, low_weights, low_gb, series_min](cplx z) {
        if (std::abs(z) >= series_min) {
            cplx inv = 1.0 / z, acc = 0.0;
            double k = static_cast<double>(tail->size()) - 1.0;
            for (auto it = tail->rbegin(); it != tail->rend(); ++it, k -= 1.0)
                acc = (acc - (k + 1.0) * (*it)) * inv;
            return 1.0 + acc * inv;
        }
        cplx acc = 0.0;
        for (size_t j = 0; j < low_nodes->size(); ++j) {
            cplx d = (*low_gb)[j] - z;
            acc += (*low_weights)[j] / (d * d);
        }
        return 1.0 + acc;
    };
    out.g_aprime = ConformalMap::closed_form(aprime_eval, aprime_deriv,
                                             DomainDescriptor::exterior(0.0, setup.rho_a));

    // verification: composition residual on the mid circle, analyticity tails
    for (cplx z : circle_points(0.0, setup.mid_measure, 64))
        out.composition_residual =
            std::max(out.composition_residual, std::abs(out.g_aprime(out.g_b(z)) - g(z)));

    CircleContour mid(0.0, setup.mid_measure, +1, m);
    auto tail_b = laurent_coeffs([&](cplx z) { return out.g_b(z) - z; }, mid, -m / 4, -1);
    for (const cplx& c : tail_b) out.g_b_tail_norm = std::max(out.g_b_tail_norm, std::abs(c));
    auto tail_a = laurent_coeffs([&](cplx z) { return out.g_aprime(z) - z; }, mid, 0, m / 4);
    for (const cplx& c : tail_a)
        out.g_aprime_tail_norm = std::max(out.g_aprime_tail_norm, std::abs(c));
    return out;
}

// First-order Cauchy splitting of a vector field on the annulus: the part
// analytic inside the iteration circle, h_B(z) = oint_{dB^-} dy h(y)/(y-z).
template <typename H>
cplx cauchy_split_inside(H&& h, const AnnularSetup& setup, cplx z) {
    CircleContour contour(0.0, setup.iteration_radius, +1, setup.nodes);
    return contour_integral([&](cplx y) { return h(y) / (y - z); }, contour);
}

}  // namespace confcalc
