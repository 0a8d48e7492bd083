#pragma once

#include <utility>
#include <vector>

#include "confcalc/configuration.hpp"
#include "confcalc/contour.hpp"
#include "confcalc/core.hpp"
#include "confcalc/derivative.hpp"
#include "confcalc/riemann_map.hpp"

namespace confcalc {

// ---------------------------------------------------------------------------
// Exactly known correlators
// ---------------------------------------------------------------------------

// GFF vertex correlator on the sphere: prod_{i<j} (z_i-z_j)^{a_i a_j}
// (zbar_i-zbar_j)^{a_i a_j} (= prod |z_i-z_j|^{2 a_i a_j} with principal
// branches) times the accumulated primary Jacobian factors. Requires
// neutrality sum a_j = 0 and distinct points.
inline cplx gff_sphere_correlator(const Configuration& sigma) {
    double total_charge = 0.0;
    for (const auto& p : sigma.points()) {
        if (!p.field.gff_charge)
            throw singular_configuration_error("GFF correlator needs a charge at every point");
        total_charge += *p.field.gff_charge;
    }
    if (std::abs(total_charge) > 1e-12)
        throw singular_configuration_error("GFF correlator requires neutral total charge");

    const auto& pts = sigma.points();
    double log_abs = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            cplx d = pts[i].position - pts[j].position;
            if (std::abs(d) < 1e-13)
                throw singular_configuration_error("coincident points in GFF correlator");
            log_abs += 2.0 * (*pts[i].field.gff_charge) * (*pts[j].field.gff_charge) *
                       std::log(std::abs(d));
        }
    cplx value = std::exp(log_abs);
    for (const auto& p : pts) value *= p.jacobian_factor;
    return value;
}

inline Functional gff_functional() {
    return {[](const Configuration& s) { return gff_sphere_correlator(s); }, "gff_sphere", false};
}

// <O(z)>_H = (2 Im z)^{-2 delta} for a spinless primary.
inline double halfplane_onepoint(cplx z, double delta) {
    if (!(z.imag() > 0.0))
        throw singular_configuration_error("half-plane one-point function needs Im z > 0");
    return std::pow(2.0 * z.imag(), -2.0 * delta);
}

// One-point functional on the half-plane and its deformations. On a deformed
// domain the value is pulled back through the uniformizer m : C' -> H,
//   <O(z)>_{C'} = |m'(z)|^{2 delta} (2 Im m(z))^{-2 delta},
// which the Theodorsen solver supplies; the normalization ambiguity of m is
// an H-automorphism and drops out of this combination.
inline Functional halfplane_onepoint_functional() {
    return {[](const Configuration& sigma) -> cplx {
                if (sigma.points().empty()) return 1.0;
                if (sigma.points().size() != 1)
                    throw singular_configuration_error(
                        "half-plane functional supports a single marked point");
                const MarkedPoint& p = sigma.points()[0];
                if (p.field.delta != p.field.delta_tilde)
                    throw singular_configuration_error(
                        "half-plane one-point function is spinless (delta == delta-tilde)");
                double base;
                if (!sigma.deformed()) {
                    base = halfplane_onepoint(p.position, p.field.delta);
                } else {
                    ConformalMap m = halfplane_uniformizer(sigma.boundary());
                    cplx mz = m(p.position);
                    cplx dm = m.deriv(p.position);
                    base = std::pow(std::abs(dm) / (2.0 * mz.imag()), 2.0 * p.field.delta);
                }
                return base * p.jacobian_factor;
            },
            "halfplane_onepoint", true};
}

// ---------------------------------------------------------------------------
// Ward identity right-hand sides
// ---------------------------------------------------------------------------

// sum_j ( delta_j/(w-z_j)^2 + d_{z_j}/(w-z_j) ) applied to the GFF sphere
// correlator, with the position derivatives in closed form.
inline cplx ward_rhs_sphere(cplx w, const Configuration& sigma) {
    const auto& pts = sigma.points();
    if (pts.empty()) return 0.0;
    cplx f = gff_sphere_correlator(sigma);
    cplx acc = 0.0;
    for (size_t j = 0; j < pts.size(); ++j) {
        double aj = *pts[j].field.gff_charge;
        cplx dlog = 0.0;
        for (size_t k = 0; k < pts.size(); ++k)
            if (k != j) dlog += aj * (*pts[k].field.gff_charge) / (pts[j].position - pts[k].position);
        acc += pts[j].field.delta / ((w - pts[j].position) * (w - pts[j].position)) +
               dlog / (w - pts[j].position);
    }
    return acc * f;
}

namespace detail {

// d_z and d_zbar of the half-plane one-point function, each extracted by a
// small Cauchy circle on the holomorphic continuation in one slot with the
// other slot frozen. This keeps the oracle independent of the engine's
// finite-difference path.
inline std::pair<cplx, cplx> halfplane_position_derivs(cplx z, double delta) {
    cplx zb = std::conj(z);
    double rho = 0.1 * z.imag();
    cplx dz = cauchy_derivative(
        [zb, delta](cplx u) { return std::pow(-iu * (u - zb), -2.0 * delta); }, z, rho);
    cplx dzb = cauchy_derivative(
        [z, delta](cplx v) { return std::pow(-iu * (z - v), -2.0 * delta); }, zb, rho);
    return {dz, dzb};
}

}  // namespace detail

// Direct plus image terms for the half-plane one-point configuration:
//   ( delta/(w-z)^2 + d_z/(w-z) + delta~/(w-zbar)^2 + d_zbar/(w-zbar) ) f.
inline cplx ward_rhs_halfplane(cplx w, const Configuration& sigma) {
    if (sigma.points().empty()) return 0.0;
    if (sigma.points().size() != 1)
        throw singular_configuration_error("half-plane Ward oracle ships for one point");
    const MarkedPoint& p = sigma.points()[0];
    cplx z = p.position, zb = std::conj(p.position);
    double delta = p.field.delta;
    auto [dzf, dzbf] = detail::halfplane_position_derivs(z, delta);
    cplx jac = p.jacobian_factor;
    cplx f = halfplane_onepoint(z, delta);
    return (delta * f / ((w - z) * (w - z)) + dzf / (w - z) +
            p.field.delta_tilde * f / ((w - zb) * (w - zb)) + dzbf / (w - zb)) *
           jac;
}

inline cplx connected_subtract(cplx full, cplx onepoint_T, cplx correlator) {
    return full - onepoint_T * correlator;
}

// ---------------------------------------------------------------------------
// Stress tensor transport
// ---------------------------------------------------------------------------

// (dg(w))^2 T(g(w)) + (c/12) {g, w}: transports a T insertion at g(w) on the
// image domain to an insertion at w on the source domain.
inline cplx transform_stress_tensor(const ConformalMap& g, cplx w, cplx T_at_gw,
                                    CentralCharge c) {
    cplx dg = g.deriv(w);
    return dg * dg * T_at_gw + (c.c / 12.0) * schwarzian(g, w);
}

// <T(w)>_C = (c/12) {g^{-1}, w} for a uniformizer g : H ->> C (from <T>_H = 0).
inline cplx onepoint_stress_tensor(const ConformalMap& uniformizer_from_h, cplx w,
                                   CentralCharge c, double schwarzian_radius = 0.0) {
    ConformalMap inv = uniformizer_from_h.inverse(DomainDescriptor::sphere());
    return (c.c / 12.0) * schwarzian(inv, w, schwarzian_radius);
}

// ---------------------------------------------------------------------------
// Joukowsky extraction of T(w)
// ---------------------------------------------------------------------------

// Angular average (1/(2 pi eps^2)) int_0^{2pi} dtheta e^{-2 i theta}
// [ f(g_eps . Sigma) - f(Sigma) ] with g_eps(z) = z + eps^2 e^{2 i theta}/(w-z),
// extrapolated to eps -> 0 over the given sequence (the error is O(eps^4):
// every second-order term integrates to zero against e^{-2 i theta}).
inline cplx joukowsky_stress_extraction(const Functional& f, const Configuration& sigma, cplx w,
                                        const std::vector<double>& eps_sequence,
                                        int n_theta = 32) {
    if (eps_sequence.empty()) throw config_error("empty epsilon sequence");
    for (const auto& p : sigma.points())
        for (double eps : eps_sequence)
            if (std::abs(w - p.position) < 4.0 * eps)
                throw step_too_large_error("joukowsky deformation too large near a marked point");

    cplx f0 = f(sigma);
    std::vector<cplx> values;
    for (double eps : eps_sequence) {
        cplx acc = 0.0;
        for (int k = 0; k < n_theta; ++k) {
            double theta = 2.0 * pi * k / n_theta;
            cplx lam = eps * eps * std::polar(1.0, 2.0 * theta);
            ConformalMap g = ConformalMap::closed_form(
                [lam, w](cplx z) { return z + lam / (w - z); },
                [lam, w](cplx z) { return 1.0 + lam / ((w - z) * (w - z)); },
                sigma.domain(), ConformalMap::Kind::joukowsky_family_member);
            acc += std::polar(1.0, -2.0 * theta) * (f(apply_action(g, sigma)) - f0);
        }
        values.push_back(acc / (static_cast<double>(n_theta) * eps * eps));
    }

    // Neville extrapolation in x = eps^4 to x = 0.
    std::vector<cplx> table = values;
    std::vector<double> x;
    x.reserve(eps_sequence.size());
    for (double eps : eps_sequence) x.push_back(std::pow(eps, 4));
    for (size_t level = 1; level < table.size(); ++level)
        for (size_t i = table.size() - 1; i >= level; --i) {
            table[i] = (x[i - level] * table[i] - x[i] * table[i - 1]) / (x[i - level] - x[i]);
            if (i == level) break;
        }
    return table.back();
}

// ---------------------------------------------------------------------------
// Ward identities as derivative identities
// ---------------------------------------------------------------------------

struct WardComparison {
    cplx derivative;
    cplx oracle;
    double relative_residual;
};

// The connected T insertion as a global holomorphic derivative versus the
// closed-form Ward oracle; on the sphere and on H the connected and full
// insertions coincide.
inline WardComparison ward_vs_derivative(const Functional& f, const Configuration& sigma, cplx w,
                                         const DerivativeOptions& opt = {}) {
    HoloDerivative d = holo_derivative_point(f, sigma, w, opt);
    cplx oracle = sigma.base() == Configuration::Base::halfplane ? ward_rhs_halfplane(w, sigma)
                                                                 : ward_rhs_sphere(w, sigma);
    return {d.value, oracle, std::abs(d.value - oracle) / (1.0 + std::abs(oracle))};
}

// Reflection decomposition on H: the boundary-only derivative equals the sum
// of antiholomorphic single-point derivatives carrying the boundary label,
//   Delta_{w | boundary} f = sum_j Delta-bar_{w | point j} f.
// The antiholomorphic derivative labeled by w is the one computed at the
// reflected point: Delta-bar_w = conj(Delta_{w-bar}), so each term on the
// right is the (hwd)-pair evaluated at w-bar.
inline double reflection_decomposition_residual(const Functional& f, const Configuration& sigma,
                                                cplx w, const DerivativeOptions& opt = {}) {
    DerivativeOptions boundary = opt;
    boundary.scope = ActionScope::boundary_only();
    HoloDerivative lhs = holo_derivative_point(f, sigma, w, boundary);
    cplx rhs = 0.0;
    for (int j = 0; j < static_cast<int>(sigma.points().size()); ++j) {
        DerivativeOptions part = opt;
        part.scope = ActionScope::single_point(j);
        rhs += antiholo_derivative_point(f, sigma, std::conj(w), part).value;
    }
    return std::abs(lhs.value - rhs);
}

// Reconstruction of <T(w) prod O>^(c) as local pole terms plus a boundary
// continuum: D_n(w) f + oint_{-dC^-} dz (1/(w-z)) Delta_{z | boundary} f.
// On the sphere the boundary term is absent. The half-plane contour is the
// Cayley image of a circle |zeta| = rho, traversed so it winds positively
// around w.
inline cplx boundary_continuum_insertion(const Functional& f, const Configuration& sigma, cplx w,
                                         double rho = 0.7, int nodes = 40,
                                         const DerivativeOptions& opt = {}) {
    if (sigma.base() == Configuration::Base::sphere) return ward_rhs_sphere(w, sigma);
    if (sigma.base() != Configuration::Base::halfplane)
        throw config_error("boundary continuum form ships for sphere and half-plane bases");
    if (std::abs(cayley(w)) >= rho)
        throw config_error("insertion point must lie inside the boundary-continuum contour");

    // local pole terms: direct Ward terms only (no images)
    cplx dn = 0.0;
    if (!sigma.points().empty()) {
        const MarkedPoint& p = sigma.points()[0];
        auto [dzf, dzbf] = detail::halfplane_position_derivs(p.position, p.field.delta);
        cplx fval = halfplane_onepoint(p.position, p.field.delta) * p.jacobian_factor;
        dn = p.field.delta * fval / ((w - p.position) * (w - p.position)) +
             dzf * p.jacobian_factor / (w - p.position);
    }

    DerivativeOptions boundary = opt;
    boundary.scope = ActionScope::boundary_only();
    CircleContour contour(0.0, rho, -1, nodes);
    cplx integral = contour_integral(
        [&](cplx zeta) {
            cplx z = cayley_inv(zeta);
            HoloDerivative d = holo_derivative_point(f, sigma, z, boundary);
            return d.value / (w - z) * cayley_inv_deriv(zeta);
        },
        contour);
    return dn + integral;
}

}  // namespace confcalc
