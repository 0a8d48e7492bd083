#pragma once

#include <algorithm>
#include <utility>

#include "confcalc/conformal_map.hpp"
#include "confcalc/core.hpp"
#include "confcalc/vector_field.hpp"

namespace confcalc {

// Result of exponentiating a vector field: the time-t map g_t, the shrunk
// domain A_t on which the trajectory stays inside the field's domain, and
// integration metadata.
struct FlowResult {
    ConformalMap map;
    DomainDescriptor shrunk_domain = DomainDescriptor::unit_disk();
    enum class Method { closed_form, rk4 } method = Method::closed_form;
    int step_count = 0;
    double error_estimate = 0.0;
};

namespace detail {

// One RK4 trajectory of dg/dt = h(g), with the variational equation
// d(dg/dz)/dt = h'(g) * (dg/dz) integrated alongside for derivative access.
// Richardson over a step halving gives the O(h^5)-improved value and an error
// estimate. Throws with the largest valid time if the trajectory escapes.
struct FlowState {
    cplx g;
    cplx dg;
};

inline FlowState rk4_trajectory(const VectorField& h, cplx z0, double t, int steps,
                                const DomainDescriptor& dom) {
    FlowState s{z0, 1.0};
    const double dt = t / steps;
    auto rhs = [&](const FlowState& u) -> FlowState {
        cplx hv = h(u.g);
        cplx hd = h.deriv(u.g);
        return {hv, hd * u.dg};
    };
    for (int k = 0; k < steps; ++k) {
        FlowState k1 = rhs(s);
        FlowState k2 = rhs({s.g + 0.5 * dt * k1.g, s.dg + 0.5 * dt * k1.dg});
        FlowState k3 = rhs({s.g + 0.5 * dt * k2.g, s.dg + 0.5 * dt * k2.dg});
        FlowState k4 = rhs({s.g + dt * k3.g, s.dg + dt * k3.dg});
        s.g += dt / 6.0 * (k1.g + 2.0 * k2.g + 2.0 * k3.g + k4.g);
        s.dg += dt / 6.0 * (k1.dg + 2.0 * k2.dg + 2.0 * k3.dg + k4.dg);
        if (!is_finite(s.g) || !dom.contains(s.g))
            throw horizon_exceeded_error("flow trajectory left the field's domain",
                                         dt * (k + 1));
    }
    return s;
}

inline FlowState rk4_flow_value(const VectorField& h, cplx z0, double t, int base_steps) {
    const DomainDescriptor& dom = h.domain();
    FlowState coarse = rk4_trajectory(h, z0, t, base_steps, dom);
    FlowState fine = rk4_trajectory(h, z0, t, 2 * base_steps, dom);
    FlowState out;
    out.g = (16.0 * fine.g - coarse.g) / 15.0;
    out.dg = (16.0 * fine.dg - coarse.dg) / 15.0;
    return out;
}

// Shrink the domain's probe radius until the image under g_t keeps a 5%
// margin inside the original domain.
inline DomainDescriptor shrunk_domain_for(const DomainDescriptor& dom, const ConformalMap& gt) {
    auto stays_inside = [&](double radius_fraction) {
        try {
            switch (dom.kind()) {
                case DomainDescriptor::Kind::disk: {
                    double r = dom.outer_radius() * radius_fraction;
                    for (cplx z : circle_points(dom.center(), r, 32)) {
                        cplx w = gt(z);
                        if (!is_finite(w) ||
                            std::abs(w - dom.center()) > 0.95 * dom.outer_radius())
                            return false;
                    }
                    return true;
                }
                case DomainDescriptor::Kind::exterior: {
                    double r = dom.inner_radius() / radius_fraction;
                    for (cplx z : circle_points(dom.center(), r, 32)) {
                        cplx w = gt(z);
                        if (!is_finite(w) ||
                            std::abs(w - dom.center()) < 1.05 * dom.inner_radius())
                            return false;
                    }
                    return true;
                }
                default:
                    return true;
            }
        } catch (const numerical_error&) {
            return false;  // trajectory from this radius left the domain
        }
    };
    double frac = 0.975;
    while (frac > 0.05) {
        if (stays_inside(frac)) break;
        frac -= 0.025;
    }
    if (frac <= 0.05)
        throw horizon_exceeded_error("no shrunk domain keeps the flow image inside", 0.0);
    switch (dom.kind()) {
        case DomainDescriptor::Kind::disk:
            return DomainDescriptor::disk(dom.center(), dom.outer_radius() * frac);
        case DomainDescriptor::Kind::exterior:
            return DomainDescriptor::exterior(dom.center(), dom.inner_radius() / frac);
        default:
            return dom;
    }
}

}  // namespace detail

// Exponential flow g_t of dg_t/dt = h o g_t from g_0 = id. Closed forms are
// used for monomial fields of degree 0, 1, 2 (translations, scalings, and
// z -> z/(1 - c t z)) and their Mobius conjugates; everything else integrates
// RK4 with step t/64 and one Richardson halving.
inline FlowResult exponential_flow(const VectorField& h, double t, int base_steps = 64) {
    FlowResult out;

    if (h.is_monomial() && h.monomial_degree() <= 2) {
        cplx c = h.monomial_coeff();
        switch (h.monomial_degree()) {
            case 0: out.map = ConformalMap::translation(c * t); break;
            case 1: out.map = ConformalMap::scaling(std::exp(c * t)); break;
            default: out.map = ConformalMap::mobius(1.0, 0.0, -c * t, 1.0); break;
        }
        out.method = FlowResult::Method::closed_form;
        out.shrunk_domain = detail::shrunk_domain_for(h.domain(), out.map);
        return out;
    }

    if (h.conjugating_map() && h.conjugated_inner()) {
        // exp(t H_G h) = G o exp(t h) o G^{-1}
        FlowResult inner = exponential_flow(*h.conjugated_inner(), t, base_steps);
        const ConformalMap& G = *h.conjugating_map();
        out.map = ConformalMap::compose(G, ConformalMap::compose(inner.map, G.inverse()));
        out.method = inner.method;
        out.step_count = inner.step_count;
        out.error_estimate = inner.error_estimate;
        out.shrunk_domain = DomainDescriptor::image_of(
            inner.shrunk_domain, [G](cplx z) { return G(z); }, G.is_mobius());
        return out;
    }

    auto hp = std::make_shared<VectorField>(h);
    out.map = ConformalMap::closed_form(
        [hp, t, base_steps](cplx z) { return detail::rk4_flow_value(*hp, z, t, base_steps).g; },
        [hp, t, base_steps](cplx z) { return detail::rk4_flow_value(*hp, z, t, base_steps).dg; },
        h.domain());
    out.method = FlowResult::Method::rk4;
    out.step_count = 2 * base_steps;
    out.shrunk_domain = detail::shrunk_domain_for(h.domain(), out.map);

    // Richardson error estimate over the shrunk domain's probe grid
    double err = 0.0;
    for (cplx z : out.shrunk_domain.probe_points(16)) {
        auto coarse = detail::rk4_trajectory(h, z, t, base_steps, h.domain());
        auto fine = detail::rk4_trajectory(h, z, t, 2 * base_steps, h.domain());
        err = std::max(err, std::abs(coarse.g - fine.g) / 15.0);
    }
    out.error_estimate = err;
    return out;
}

// Residual of the commutation identity h o g_t = h * dg_t on the probe grid
// of the shrunk domain.
inline double flow_commutation_residual(const VectorField& h, const FlowResult& flow) {
    double worst = 0.0;
    for (cplx z : flow.shrunk_domain.probe_points(32)) {
        cplx lhs = h(flow.map(z));
        cplx rhs = h(z) * flow.map.deriv(z);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

}  // namespace confcalc
