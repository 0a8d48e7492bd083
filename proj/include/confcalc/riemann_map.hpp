#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "confcalc/boundary_curve.hpp"
#include "confcalc/conformal_map.hpp"
#include "confcalc/core.hpp"
#include "confcalc/domain.hpp"

namespace confcalc {

// Conformal map from the unit disk onto the interior of a nearly circular
// analytic Jordan curve, solved by Theodorsen's conjugate-function iteration:
// the boundary correspondence theta -> phi(theta) satisfies the fixed point
//   phi = theta + K[log rho(phi)]
// where rho is the polar radius of the curve about its center and K is the
// circle conjugation operator (Fourier multiplier -i sign k). The map is then
//   F(w) = center + w exp(Lambda(w)),
// Lambda the analytic completion of log rho + i K[log rho], normalized so
// F(0) = center and F'(0) = exp(mean log rho) > 0.
struct RiemannMapResult {
    ConformalMap map;          // D -> interior of the curve
    int iterations = 0;
    double boundary_residual = 0.0;
    int modes = 0;

    cplx inverse(cplx w) const { return map.invert(w, 0.0); }
};

namespace detail {

struct TrigSeries {
    std::vector<cplx> coeffs;  // modes k = -nmax..nmax
    int nmax = 0;

    cplx eval(double t) const {
        cplx acc = 0.0;
        for (int k = -nmax; k <= nmax; ++k)
            acc += coeffs[k + nmax] * std::polar(1.0, k * t);
        return acc;
    }
};

// Real-series Fourier analysis of samples on the plain grid t_j = 2 pi j / M.
inline std::vector<cplx> dft_modes(const std::vector<double>& v) {
    const int m = static_cast<int>(v.size());
    std::vector<cplx> out(m / 2);  // modes 0..m/2-1
    for (int k = 0; k < m / 2; ++k) {
        cplx acc = 0.0;
        for (int j = 0; j < m; ++j) acc += v[j] * std::polar(1.0, -2.0 * pi * k * j / m);
        out[k] = acc / static_cast<double>(m);
    }
    return out;
}

}  // namespace detail

inline RiemannMapResult solve_disk_map(const BoundaryCurve& curve, double tol = 1e-12,
                                       int max_iterations = 200) {
    curve.check_invariants();

    // Auto-double the working resolution until the curve's spectral tail
    // above n/2 is below 1e-13.
    int n = 128;
    auto tail_small = [&](int nn) {
        for (int k = nn / 2; k <= curve.max_mode(); ++k)
            if (curve.coeff_magnitude(k) > 1e-13 || curve.coeff_magnitude(-k) > 1e-13)
                return false;
        return true;
    };
    while (!tail_small(n) && n < 4096) n *= 2;
    const int m = 2 * n;

    const cplx center = curve.center();

    // Polar radius as a trig series in phi, sampled once by Newton solves.
    std::vector<double> logr(m);
    for (int j = 0; j < m; ++j)
        logr[j] = std::log(curve.polar_radius(2.0 * pi * j / m));
    auto logr_modes = detail::dft_modes(logr);
    auto logr_at = [&](double phi) {
        double acc = logr_modes[0].real();
        for (int k = 1; k < static_cast<int>(logr_modes.size()); ++k)
            acc += 2.0 * (logr_modes[k] * std::polar(1.0, k * phi)).real();
        return acc;
    };

    // Fixed-point iteration for the boundary correspondence.
    std::vector<double> phi(m), v(m), u(m);
    for (int j = 0; j < m; ++j) phi[j] = 2.0 * pi * j / m;
    int iterations = 0;
    double update = 0.0;
    for (; iterations < max_iterations; ++iterations) {
        for (int j = 0; j < m; ++j) v[j] = logr_at(phi[j]);
        auto vm = detail::dft_modes(v);
        for (int j = 0; j < m; ++j) {
            double t = 2.0 * pi * j / m;
            double acc = 0.0;
            for (int k = 1; k < static_cast<int>(vm.size()); ++k)
                acc += 2.0 * (-iu * vm[k] * std::polar(1.0, k * t)).real();
            u[j] = acc;
        }
        update = 0.0;
        for (int j = 0; j < m; ++j) {
            double nphi = 2.0 * pi * j / m + u[j];
            update = std::max(update, std::abs(nphi - phi[j]));
            phi[j] = nphi;
        }
        if (update < tol) break;
    }
    if (update >= tol)
        throw deviation_too_large_error("theodorsen iteration did not converge", update);

    // Analytic completion Lambda(w) = v_0 + 2 sum_{k>0} v_k w^k.
    for (int j = 0; j < m; ++j) v[j] = logr_at(phi[j]);
    auto vm = detail::dft_modes(v);
    auto lambda = std::make_shared<std::vector<cplx>>(vm.size());
    (*lambda)[0] = vm[0].real();
    for (int k = 1; k < static_cast<int>(vm.size()); ++k) (*lambda)[k] = 2.0 * vm[k];

    auto lambda_eval = [lambda](cplx w) {
        cplx acc = 0.0;
        for (auto it = lambda->rbegin(); it != lambda->rend(); ++it) acc = acc * w + *it;
        return acc;
    };
    auto lambda_deriv = [lambda](cplx w) {
        cplx acc = 0.0;
        double k = static_cast<double>(lambda->size()) - 1.0;
        for (auto it = lambda->rbegin(); it != lambda->rend(); ++it, k -= 1.0)
            if (k >= 1.0) acc = acc * w + k * (*it);
        return acc;
    };

    RiemannMapResult out;
    out.map = ConformalMap::closed_form(
        [center, lambda_eval](cplx w) { return center + w * std::exp(lambda_eval(w)); },
        [lambda_eval, lambda_deriv](cplx w) {
            return std::exp(lambda_eval(w)) * (1.0 + w * lambda_deriv(w));
        },
        DomainDescriptor::unit_disk(), ConformalMap::Kind::riemann_map);
    out.iterations = iterations + 1;
    out.modes = static_cast<int>(vm.size());

    // Residual: distance of the mapped unit circle from the curve along rays.
    double resid = 0.0;
    for (int j = 0; j < m; ++j) {
        cplx f = out.map(std::polar(1.0, 2.0 * pi * j / m)) - center;
        resid = std::max(resid, std::abs(std::abs(f) - curve.polar_radius(std::arg(f))));
    }
    out.boundary_residual = resid;
    if (resid > 1e-10)
        throw deviation_too_large_error("disk map boundary residual above 1e-10", resid);
    return out;
}

// Uniformizer of a small analytic deformation of the upper half-plane: the
// deformed boundary is given in Cayley coordinates (a near-unit-circle curve);
// the returned map sends the deformed domain back onto H. Determined up to an
// H-automorphism, pinned by the disk-map normalization.
inline ConformalMap halfplane_uniformizer(const BoundaryCurve& deformed_boundary_cayley,
                                          cplx interior_point = iu) {
    auto disk = std::make_shared<RiemannMapResult>(solve_disk_map(deformed_boundary_cayley));
    ConformalMap m = ConformalMap::closed_form(
        [disk](cplx z) {
            cplx zeta = cayley(z);
            cplx x = disk->map.invert(zeta, zeta);
            return cayley_inv(x);
        },
        [disk](cplx z) {
            cplx zeta = cayley(z);
            cplx x = disk->map.invert(zeta, zeta);
            return cayley_inv_deriv(x) / disk->map.deriv(x) * cayley_deriv(z);
        },
        DomainDescriptor::halfplane(), ConformalMap::Kind::riemann_map);
    if (!(m(interior_point).imag() > 0.0))
        throw invalid_deformation_error("uniformizer sends the interior point out of H");
    return m;
}

}  // namespace confcalc
