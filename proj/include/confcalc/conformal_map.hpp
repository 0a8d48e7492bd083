#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "confcalc/contour.hpp"
#include "confcalc/core.hpp"
#include "confcalc/domain.hpp"

namespace confcalc {

// Univalent analytic map with derivative access. Values are immutable after
// construction; composition chains store their constituents and inversion is
// lazy Newton.
class ConformalMap {
public:
    enum class Kind {
        identity,
        mobius,
        polynomial_perturbation,
        joukowsky_family_member,
        composition,
        newton_inverse,
        riemann_map,
        closed_form,
    };

    ConformalMap() : ConformalMap(identity()) {}

    static ConformalMap identity(DomainDescriptor dom = DomainDescriptor::sphere()) {
        ConformalMap m(Kind::identity, std::move(dom));
        m.eval_ = [](cplx z) { return z; };
        m.deriv_ = [](cplx) { return cplx(1.0); };
        return m;
    }

    // (az+b)/(cz+d), ad - bc != 0
    static ConformalMap mobius(cplx a, cplx b, cplx c, cplx d,
                               DomainDescriptor dom = DomainDescriptor::sphere()) {
        cplx det = a * d - b * c;
        if (std::abs(det) == 0.0)
            throw invalid_deformation_error("mobius map requires ad - bc != 0");
        ConformalMap m(Kind::mobius, std::move(dom));
        m.mobius_ = {a, b, c, d};
        m.eval_ = [a, b, c, d](cplx z) { return (a * z + b) / (c * z + d); };
        m.deriv_ = [det, c, d](cplx z) {
            cplx q = c * z + d;
            return det / (q * q);
        };
        return m;
    }

    static ConformalMap translation(cplx b) { return mobius(1.0, b, 0.0, 1.0); }
    static ConformalMap scaling(cplx a) { return mobius(a, 0.0, 0.0, 1.0); }
    static ConformalMap inversion() { return mobius(0.0, 1.0, 1.0, 0.0); }

    // z + sum_k coeffs[k] z^{k+2}  (perturbation starts at z^2)
    static ConformalMap polynomial_perturbation(std::vector<cplx> coeffs,
                                                DomainDescriptor dom = DomainDescriptor::sphere()) {
        ConformalMap m(Kind::polynomial_perturbation, std::move(dom));
        auto cs = std::make_shared<std::vector<cplx>>(std::move(coeffs));
        m.eval_ = [cs](cplx z) {
            cplx acc = 0.0;
            for (auto it = cs->rbegin(); it != cs->rend(); ++it) acc = (acc + *it) * z;
            return z + acc * z;
        };
        m.deriv_ = [cs](cplx z) {
            cplx acc = 0.0;
            double k = static_cast<double>(cs->size()) + 1.0;
            for (auto it = cs->rbegin(); it != cs->rend(); ++it, k -= 1.0)
                acc = acc * z + k * (*it);
            return 1.0 + acc * z;
        };
        return m;
    }

    // Map with caller-supplied evaluator and exact derivative evaluator.
    static ConformalMap closed_form(analytic_fn eval, analytic_fn deriv, DomainDescriptor dom,
                                    Kind kind = Kind::closed_form) {
        ConformalMap m(kind, std::move(dom));
        m.eval_ = std::move(eval);
        m.deriv_ = std::move(deriv);
        return m;
    }

    // Map with evaluator only; derivative falls back to Cauchy extraction.
    static ConformalMap from_evaluator(analytic_fn eval, DomainDescriptor dom,
                                       double extraction_radius = 0.0,
                                       Kind kind = Kind::closed_form) {
        ConformalMap m(kind, std::move(dom));
        auto e = std::make_shared<analytic_fn>(std::move(eval));
        m.eval_ = [e](cplx z) { return (*e)(z); };
        m.deriv_ = [e, extraction_radius](cplx z) {
            double rho = extraction_radius > 0.0 ? extraction_radius
                                                 : 1e-2 * std::max(1.0, std::abs(z));
            return cauchy_derivative(*e, z, rho);
        };
        return m;
    }

    cplx operator()(cplx z) const { return eval_(z); }
    cplx deriv(cplx z) const { return deriv_(z); }

    Kind kind() const { return kind_; }
    const DomainDescriptor& domain() const { return domain_; }
    bool is_mobius() const { return kind_ == Kind::identity || kind_ == Kind::mobius; }

    // g1 after g2; Mobius pairs compose exactly, other chains store constituents.
    static ConformalMap compose(const ConformalMap& g1, const ConformalMap& g2) {
        if (g1.is_mobius() && g2.is_mobius()) {
            auto [a1, b1, c1, d1] = g1.mobius_coeffs();
            auto [a2, b2, c2, d2] = g2.mobius_coeffs();
            return mobius(a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2,
                          c1 * b2 + d1 * d2, g2.domain());
        }
        ConformalMap m(Kind::composition, g2.domain());
        auto p1 = std::make_shared<ConformalMap>(g1);
        auto p2 = std::make_shared<ConformalMap>(g2);
        m.eval_ = [p1, p2](cplx z) { return (*p1)((*p2)(z)); };
        m.deriv_ = [p1, p2](cplx z) {
            cplx w = (*p2)(z);
            return p1->deriv(w) * p2->deriv(z);
        };
        m.parts_ = {p1, p2};
        return m;
    }

    // Lazy Newton inverse; warm starts come through newton_invert directly.
    ConformalMap inverse(DomainDescriptor image_dom = DomainDescriptor::sphere()) const {
        if (is_mobius()) {
            auto [a, b, c, d] = mobius_coeffs();
            return mobius(d, -b, -c, a, std::move(image_dom));
        }
        ConformalMap m(Kind::newton_inverse, std::move(image_dom));
        auto self = std::make_shared<ConformalMap>(*this);
        m.eval_ = [self](cplx w) { return self->invert(w, w); };
        m.deriv_ = [self](cplx w) {
            cplx z = self->invert(w, w);
            return 1.0 / self->deriv(z);
        };
        m.parts_ = {self};
        return m;
    }

    std::tuple<cplx, cplx, cplx, cplx> mobius_coeffs() const {
        if (kind_ == Kind::identity) return {1.0, 0.0, 0.0, 1.0};
        return {mobius_[0], mobius_[1], mobius_[2], mobius_[3]};
    }

    // Solve g(z) = w by Newton from initial_guess. Tolerance 1e-13 * scale,
    // at most 50 iterations; failure carries the last iterate.
    cplx invert(cplx w, cplx initial_guess) const {
        if (is_mobius()) {
            auto [a, b, c, d] = mobius_coeffs();
            return (d * w - b) / (-c * w + a);
        }
        const double tol = 1e-13 * std::max(1.0, std::abs(w));
        cplx z = initial_guess;
        double best = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 50; ++it) {
            cplx r = eval_(z) - w;
            double rn = std::abs(r);
            if (!std::isfinite(rn))
                throw no_convergence_error("newton iterate left the analyticity domain", z, rn);
            if (rn <= tol) return z;
            best = std::min(best, rn);
            z -= r / deriv_(z);
        }
        throw no_convergence_error("newton inversion did not converge", z, best);
    }

private:
    ConformalMap(Kind k, DomainDescriptor dom) : kind_(k), domain_(std::move(dom)) {}

    Kind kind_;
    DomainDescriptor domain_;
    analytic_fn eval_;
    analytic_fn deriv_;
    std::array<cplx, 4> mobius_{1.0, 0.0, 0.0, 1.0};
    std::vector<std::shared_ptr<ConformalMap>> parts_;
};

inline cplx newton_invert(const ConformalMap& g, cplx w, cplx initial_guess) {
    return g.invert(w, initial_guess);
}

// Schwarzian derivative {g, w} = g'''/g' - (3/2)(g''/g')^2. The second and
// third derivatives are extracted from the map's derivative evaluator by
// Cauchy coefficients on a small circle (never finite differences); extracting
// from g' rather than g keeps the roundoff floor at eps/rho^2.
inline cplx schwarzian(const ConformalMap& g, cplx w, double rho = 0.0) {
    if (rho <= 0.0) rho = 5e-2 * std::max(1.0, std::abs(w));
    cplx d1 = g.deriv(w);
    if (std::abs(d1) < 1e-12)
        throw degenerate_derivative_error("schwarzian at a point with vanishing derivative");
    auto taylor = cauchy_taylor_coeffs([&](cplx z) { return g.deriv(z); }, w, 2, rho);
    cplx d2 = taylor[1];        // g''(w)
    cplx d3 = 2.0 * taylor[2];  // g'''(w)
    cplx ratio = d2 / d1;
    return d3 / d1 - 1.5 * ratio * ratio;
}

}  // namespace confcalc
