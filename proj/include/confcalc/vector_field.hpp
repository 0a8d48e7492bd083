#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "confcalc/conformal_map.hpp"
#include "confcalc/contour.hpp"
#include "confcalc/core.hpp"
#include "confcalc/domain.hpp"

namespace confcalc {

enum class Sign : int { plus = +1, minus = -1 };

inline cplx basis_phase(Sign s) { return std::polar(1.0, static_cast<int>(s) * pi / 4.0); }

// Holomorphic vector field, a (-1,0)-differential: if infinity lies in the
// domain, h(z)/z^2 extends analytically there.
class VectorField {
public:
    enum class Kind { monomial, pole, closed_form, coefficient_series, conjugated };

    VectorField() = default;

    static VectorField closed_form(analytic_fn eval, analytic_fn deriv, DomainDescriptor dom) {
        VectorField h(Kind::closed_form, std::move(dom));
        h.eval_ = std::move(eval);
        h.deriv_ = std::move(deriv);
        return h;
    }

    static VectorField from_evaluator(analytic_fn eval, DomainDescriptor dom) {
        VectorField h(Kind::closed_form, std::move(dom));
        auto e = std::make_shared<analytic_fn>(std::move(eval));
        h.eval_ = [e](cplx z) { return (*e)(z); };
        h.deriv_ = [e](cplx z) { return cauchy_derivative(*e, z); };
        return h;
    }

    // c * z^n
    static VectorField monomial(int n, cplx coeff, DomainDescriptor dom) {
        VectorField h(Kind::monomial, std::move(dom));
        h.monomial_degree_ = n;
        h.monomial_coeff_ = coeff;
        h.eval_ = [n, coeff](cplx z) { return coeff * std::pow(z, n); };
        h.deriv_ = [n, coeff](cplx z) {
            return n == 0 ? cplx(0.0) : coeff * static_cast<double>(n) * std::pow(z, n - 1);
        };
        return h;
    }

    cplx operator()(cplx z) const { return eval_(z); }
    cplx deriv(cplx z) const { return deriv_(z); }
    const DomainDescriptor& domain() const { return domain_; }
    Kind kind() const { return kind_; }
    bool is_monomial() const { return kind_ == Kind::monomial; }
    int monomial_degree() const { return monomial_degree_; }
    cplx monomial_coeff() const { return monomial_coeff_; }

    // set by pushforward under a Mobius map; lets flows reuse closed forms
    const ConformalMap* conjugating_map() const { return conj_map_.get(); }
    const VectorField* conjugated_inner() const { return conj_inner_.get(); }

    VectorField scaled(cplx c) const {
        if (is_monomial()) return monomial(monomial_degree_, c * monomial_coeff_, domain_);
        VectorField h(kind_, domain_);
        auto e = eval_;
        auto d = deriv_;
        h.eval_ = [e, c](cplx z) { return c * e(z); };
        h.deriv_ = [d, c](cplx z) { return c * d(z); };
        return h;
    }

    VectorField plus(const VectorField& other) const {
        VectorField h(Kind::closed_form, domain_);
        auto e1 = eval_, e2 = other.eval_, d1 = deriv_, d2 = other.deriv_;
        h.eval_ = [e1, e2](cplx z) { return e1(z) + e2(z); };
        h.deriv_ = [d1, d2](cplx z) { return d1(z) + d2(z); };
        return h;
    }

    // The (-1,0)-differential condition at infinity: |h(z)/z^2| bounded on a
    // large probe circle.
    bool differential_condition_at_infinity(double bound = 1e6) const {
        if (!domain_.contains_infinity()) return true;
        for (cplx z : circle_points(0.0, 1e4, 16))
            if (std::abs(eval_(z)) / std::norm(z) > bound) return false;
        return true;
    }

private:
    VectorField(Kind k, DomainDescriptor dom) : kind_(k), domain_(std::move(dom)) {}

    Kind kind_ = Kind::closed_form;
    DomainDescriptor domain_ = DomainDescriptor::unit_disk();
    analytic_fn eval_;
    analytic_fn deriv_;
    int monomial_degree_ = 0;
    cplx monomial_coeff_ = 0.0;
    std::shared_ptr<ConformalMap> conj_map_;
    std::shared_ptr<VectorField> conj_inner_;

    friend VectorField pushforward(const ConformalMap&, const VectorField&);
};

// Basis field on the disk: e^{i pi s/4} z^n. Negative n is admitted for
// exterior-domain work (n <= 2 keeps the differential condition at infinity).
inline VectorField basis_field(int n, Sign s,
                               DomainDescriptor dom = DomainDescriptor::unit_disk()) {
    return VectorField::monomial(n, basis_phase(s), std::move(dom));
}

// Coefficient functional c_{n,s}(h) = Re oint dz z^{-n-1} e^{-i pi s/4} h(z),
// default contour radius 0.7 inside the disk.
inline double basis_coefficient(const VectorField& h, int n, Sign s, double radius = 0.7,
                                int nodes = 256) {
    CircleContour contour(0.0, radius, +1, nodes);
    cplx phase = std::conj(basis_phase(s));
    cplx val = contour_integral(
        [&](cplx z) { return std::pow(z, -n - 1) * phase * h(z); }, contour);
    return val.real();
}

// Truncated basis expansion sum_{n<=N, s} c_{n,s}(h) H_{n,s}; the sup-error on
// |z| <= 1/2 decays geometrically in N for h analytic on a larger disk.
inline VectorField reconstruct(const VectorField& h, int N, double contour_radius = 0.7) {
    auto coeffs = std::make_shared<std::vector<cplx>>();
    coeffs->reserve(N + 1);
    for (int n = 0; n <= N; ++n) {
        double cp = basis_coefficient(h, n, Sign::plus, contour_radius);
        double cm = basis_coefficient(h, n, Sign::minus, contour_radius);
        coeffs->push_back(cp * basis_phase(Sign::plus) + cm * basis_phase(Sign::minus));
    }
    return VectorField::closed_form(
        [coeffs](cplx z) {
            cplx acc = 0.0;
            for (auto it = coeffs->rbegin(); it != coeffs->rend(); ++it) acc = acc * z + *it;
            return acc;
        },
        [coeffs](cplx z) {
            cplx acc = 0.0;
            double n = static_cast<double>(coeffs->size()) - 1.0;
            for (auto it = coeffs->rbegin(); it != coeffs->rend(); ++it, n -= 1.0)
                if (n >= 1.0) acc = acc * z + n * (*it);
            return acc;
        },
        h.domain());
}

// Left action h -> h * dg and right action h -> h o g of a conformal map on
// vector fields.
inline VectorField act_left(const ConformalMap& g, const VectorField& h) {
    auto gp = std::make_shared<ConformalMap>(g);
    auto hp = std::make_shared<VectorField>(h);
    return VectorField::closed_form(
        [gp, hp](cplx z) { return (*hp)(z)*gp->deriv(z); },
        [gp, hp](cplx z) {
            return hp->deriv(z) * gp->deriv(z) +
                   (*hp)(z)*cauchy_derivative([&](cplx u) { return gp->deriv(u); }, z);
        },
        g.domain());
}

inline VectorField act_right(const ConformalMap& g, const VectorField& h) {
    auto gp = std::make_shared<ConformalMap>(g);
    auto hp = std::make_shared<VectorField>(h);
    return VectorField::closed_form(
        [gp, hp](cplx z) { return (*hp)((*gp)(z)); },
        [gp, hp](cplx z) { return hp->deriv((*gp)(z)) * gp->deriv(z); }, g.domain());
}

// Pushforward of h through g: (h * dg) o g^{-1}. Functorial in g; this is the
// left action of g followed by the right action of g^{-1}.
inline VectorField pushforward(const ConformalMap& g, const VectorField& h) {
    auto gp = std::make_shared<ConformalMap>(g);
    auto hp = std::make_shared<VectorField>(h);
    DomainDescriptor image = DomainDescriptor::image_of(
        h.domain(), [gp](cplx z) { return (*gp)(z); }, g.is_mobius());
    VectorField out = VectorField::closed_form(
        [gp, hp](cplx w) {
            cplx z = gp->invert(w, w);
            return (*hp)(z)*gp->deriv(z);
        },
        [gp, hp](cplx w) {
            cplx z = gp->invert(w, w);
            cplx ddg = cauchy_derivative([&](cplx u) { return gp->deriv(u); }, z);
            return hp->deriv(z) + (*hp)(z)*ddg / gp->deriv(z);
        },
        std::move(image));
    if (g.is_mobius()) {
        out.conj_map_ = gp;
        out.conj_inner_ = hp;
    }
    return out;
}

// h^{(w)} with phase: z -> e^{i theta} / (w - z), on any domain excluding w.
inline VectorField pole_field(cplx w, double theta = 0.0,
                              DomainDescriptor dom = DomainDescriptor::sphere()) {
    cplx phase = std::polar(1.0, theta);
    return VectorField::closed_form(
        [w, phase](cplx z) { return phase / (w - z); },
        [w, phase](cplx z) { return phase / ((w - z) * (w - z)); }, std::move(dom));
}

inline VectorField pole_field(cplx w, cplx phase, DomainDescriptor dom) {
    return VectorField::closed_form(
        [w, phase](cplx z) { return phase / (w - z); },
        [w, phase](cplx z) { return phase / ((w - z) * (w - z)); }, std::move(dom));
}

// Deformation family with right-derivative h at eta = 0, anchored at a point
// a outside the field's domain:
//   a = infinity:  g_eta(z) = z + eta h(z)
//   a finite:      g_eta(z) = a + (z-a) / (1 - eta h(z)/(z-a))
// The family is checked for a vanishing denominator on the probe grid.
inline ConformalMap deformation_family(const VectorField& h, cplx anchor, double eta,
                                       bool anchor_at_infinity = false) {
    auto hp = std::make_shared<VectorField>(h);
    if (anchor_at_infinity) {
        return ConformalMap::closed_form(
            [hp, eta](cplx z) { return z + eta * (*hp)(z); },
            [hp, eta](cplx z) { return 1.0 + eta * hp->deriv(z); }, h.domain(),
            ConformalMap::Kind::joukowsky_family_member);
    }
    const cplx a = anchor;
    for (cplx z : h.domain().probe_points(16)) {
        cplx den = 1.0 - eta * (*hp)(z) / (z - a);
        if (std::abs(den) < 0.2)
            throw step_too_large_error("deformation family denominator nearly vanishes on probe grid");
    }
    return ConformalMap::closed_form(
        [hp, eta, a](cplx z) {
            cplx u = z - a;
            return a + u / (1.0 - eta * (*hp)(z) / u);
        },
        [hp, eta, a](cplx z) {
            cplx u = z - a;
            cplx den = u - eta * (*hp)(z);
            // d/dz [ a + u^2 / (u - eta h) ]
            return (2.0 * u * den - u * u * (1.0 - eta * hp->deriv(z))) / (den * den);
        },
        h.domain(), ConformalMap::Kind::joukowsky_family_member);
}

}  // namespace confcalc
