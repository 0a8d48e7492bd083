#pragma once

#include <vector>

#include "confcalc/core.hpp"

namespace confcalc {

// Circle contour for quadrature. Orientation +1 is counterclockwise in the
// plane; -1 traverses clockwise (used when the contour must wind positively
// around the interior of an exterior domain).
struct CircleContour {
    cplx center = 0.0;
    double radius = 1.0;
    int orientation = +1;
    int node_count = 256;

    CircleContour() = default;
    CircleContour(cplx c, double r, int orient = +1, int nodes = 256)
        : center(c), radius(r), orientation(orient), node_count(nodes) {
        if (radius <= 0.0) throw config_error("contour radius must be positive");
        if (orientation != 1 && orientation != -1)
            throw config_error("contour orientation must be +1 or -1");
        if (node_count < 16 || node_count % 2 != 0)
            throw config_error("contour node count must be even and >= 16");
    }

    cplx node(int k) const {
        return center + radius * std::polar(1.0, 2.0 * pi * k / node_count);
    }
};

// Integral in the normalized measure with oint dz/z = 1, i.e. the standard
// line integral divided by 2*pi*i. All formulas in this library are written
// in this measure; no stray 2*pi*i factors appear anywhere else.
//
// Trapezoidal rule over equispaced nodes: spectrally accurate for integrands
// analytic in an annular neighborhood of the contour.
template <typename F>
cplx contour_integral(F&& integrand, const CircleContour& contour) {
    const int m = contour.node_count;
    cplx acc = 0.0;
    for (int k = 0; k < m; ++k) {
        cplx phase = std::polar(1.0, 2.0 * pi * k / m);
        cplx v = integrand(contour.center + contour.radius * phase);
        if (!is_finite(v))
            throw contour_singularity_error("contour node hit a singularity of the integrand");
        acc += v * phase;
    }
    return static_cast<double>(contour.orientation) * contour.radius * acc / static_cast<double>(m);
}

// The antiholomorphic pairing term oint d(zbar) beta-bar(zbar) h-bar(zbar),
// normalized so oint d(zbar)/zbar = 1. Everything conjugates through, so it
// equals the conjugate of the holomorphic integral of beta*h.
template <typename A, typename H>
cplx conjugate_pair_integral(A&& beta, H&& h, const CircleContour& contour) {
    return std::conj(contour_integral([&](cplx z) { return beta(z) * h(z); }, contour));
}

// Laurent coefficients a_n of fn about the contour center, fn(z) = sum a_n (z-c)^n,
// for n in [n_min, n_max]. One pass over the nodes.
template <typename F>
std::vector<cplx> laurent_coeffs(F&& fn, const CircleContour& contour, int n_min, int n_max) {
    const int m = contour.node_count;
    std::vector<cplx> vals(m);
    for (int k = 0; k < m; ++k) {
        vals[k] = fn(contour.node(k));
        if (!is_finite(vals[k]))
            throw contour_singularity_error("contour node hit a singularity of the integrand");
    }
    std::vector<cplx> coeffs;
    coeffs.reserve(n_max - n_min + 1);
    for (int n = n_min; n <= n_max; ++n) {
        cplx acc = 0.0;
        for (int k = 0; k < m; ++k)
            acc += vals[k] * std::polar(1.0, -2.0 * pi * k * n / m);
        coeffs.push_back(acc / (static_cast<double>(m) * std::pow(contour.radius, n)));
    }
    return coeffs;
}

// Taylor coefficients a_0..a_k of f about w by Cauchy extraction on a small
// circle: a_j = (1/rho^j) * mean(f(w + rho e^{i t}) e^{-i j t}). The constant
// mode a_0 = f(w) is subtracted from the samples before the modal sums, which
// removes the dominant contribution to the roundoff floor of the higher modes.
template <typename F>
std::vector<cplx> cauchy_taylor_coeffs(F&& f, cplx w, int k_max, double rho, int nodes = 256) {
    std::vector<cplx> vals(nodes);
    for (int k = 0; k < nodes; ++k) {
        vals[k] = f(w + rho * std::polar(1.0, 2.0 * pi * k / nodes));
        if (!is_finite(vals[k]))
            throw contour_singularity_error("derivative-extraction circle hit a singularity");
    }
    cplx a0 = 0.0;
    for (const cplx& v : vals) a0 += v;
    a0 /= static_cast<double>(nodes);

    std::vector<cplx> out(k_max + 1);
    out[0] = a0;
    for (int j = 1; j <= k_max; ++j) {
        cplx acc = 0.0;
        for (int k = 0; k < nodes; ++k)
            acc += (vals[k] - a0) * std::polar(1.0, -2.0 * pi * k * j / nodes);
        out[j] = acc / (static_cast<double>(nodes) * std::pow(rho, j));
    }
    return out;
}

// First derivative by Cauchy extraction; rho defaults to 1e-2 of the local scale.
template <typename F>
cplx cauchy_derivative(F&& f, cplx w, double rho = 0.0, int nodes = 64) {
    if (rho <= 0.0) rho = 1e-2 * std::max(1.0, std::abs(w));
    return cauchy_taylor_coeffs(f, w, 1, rho, nodes)[1];
}

}  // namespace confcalc
