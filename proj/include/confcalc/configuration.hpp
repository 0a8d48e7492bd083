#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confcalc/boundary_curve.hpp"
#include "confcalc/conformal_map.hpp"
#include "confcalc/core.hpp"
#include "confcalc/domain.hpp"

namespace confcalc {

// Conformal dimensions of a primary field; GFF vertex fields carry a charge
// alpha with delta = delta-tilde = alpha^2 / 2.
struct PrimaryFieldData {
    double delta = 0.0;
    double delta_tilde = 0.0;
    std::optional<double> gff_charge;

    static PrimaryFieldData gff(double alpha) {
        return {alpha * alpha / 2.0, alpha * alpha / 2.0, alpha};
    }
    static PrimaryFieldData primary(double d, double dt) { return {d, dt, std::nullopt}; }
};

struct CentralCharge {
    double c = 1.0;
};

struct MarkedPoint {
    cplx position;
    PrimaryFieldData field;
    // accumulated (dg)^delta (conj dg)^delta-tilde along the deformation path
    cplx jacobian_factor = 1.0;
};

// Which part of a configuration a conformal map acts on. Moving a single
// argument at a time realizes partial derivatives of multi-argument
// functionals; boundary_only realizes derivatives with respect to the domain.
struct ActionScope {
    enum class Mode { all, boundary_only, single_point } mode = Mode::all;
    int point_index = -1;

    static ActionScope all() { return {Mode::all, -1}; }
    static ActionScope boundary_only() { return {Mode::boundary_only, -1}; }
    static ActionScope single_point(int j) { return {Mode::single_point, j}; }
};

// The tuple acted on by functionals: a domain, marked points with primary
// field data, and (for deformed domains with a boundary) the tracked boundary
// curve. Half-plane boundaries are tracked in Cayley coordinates, where they
// are nearly circular.
class Configuration {
public:
    enum class Base { sphere, halfplane, disk, exterior };

    static Configuration on_sphere(std::vector<MarkedPoint> pts) {
        Configuration s(Base::sphere, DomainDescriptor::sphere(), std::move(pts));
        s.check_invariants();
        return s;
    }

    static Configuration on_halfplane(std::vector<MarkedPoint> pts) {
        Configuration s(Base::halfplane, DomainDescriptor::halfplane(), std::move(pts));
        s.check_invariants();
        return s;
    }

    static Configuration on_disk(std::vector<MarkedPoint> pts) {
        Configuration s(Base::disk, DomainDescriptor::unit_disk(), std::move(pts));
        s.check_invariants();
        return s;
    }

    static Configuration on_exterior(std::vector<MarkedPoint> pts) {
        Configuration s(Base::exterior, DomainDescriptor::exterior(), std::move(pts));
        s.check_invariants();
        return s;
    }

    Base base() const { return base_; }
    const DomainDescriptor& domain() const { return domain_; }
    const std::vector<MarkedPoint>& points() const { return points_; }
    std::vector<MarkedPoint>& points() { return points_; }
    bool deformed() const { return deformed_; }

    // Boundary curve of the deformed domain. For the half-plane base this is
    // the Cayley image of the boundary (the unit circle when undeformed).
    const BoundaryCurve& boundary() const {
        if (!boundary_) boundary_ = BoundaryCurve::circle(0.0, 1.0);
        return *boundary_;
    }
    void set_boundary(BoundaryCurve b, bool deformed) {
        boundary_ = std::move(b);
        deformed_ = deformed;
    }

    // Length scale for derivative steps: the smallest pairwise point distance,
    // capped by the distance to the boundary where one exists.
    double scale() const {
        double s = 1.0;
        for (size_t i = 0; i < points_.size(); ++i) {
            for (size_t j = i + 1; j < points_.size(); ++j)
                s = std::min(s, std::abs(points_[i].position - points_[j].position));
            if (base_ == Base::halfplane) s = std::min(s, points_[i].position.imag());
            if (base_ == Base::disk) s = std::min(s, 1.0 - std::abs(points_[i].position));
            if (base_ == Base::exterior) s = std::min(s, std::abs(points_[i].position) - 1.0);
        }
        return s;
    }

    void check_invariants() const {
        for (size_t i = 0; i < points_.size(); ++i) {
            if (!domain_.contains(points_[i].position))
                throw singular_configuration_error("marked point outside the domain");
            for (size_t j = i + 1; j < points_.size(); ++j)
                if (std::abs(points_[i].position - points_[j].position) < 1e-12)
                    throw singular_configuration_error("coincident marked points");
        }
        if (base_ == Base::sphere) {
            double total = 0.0;
            bool any_gff = false;
            for (const auto& p : points_)
                if (p.field.gff_charge) {
                    any_gff = true;
                    total += *p.field.gff_charge;
                }
            if (any_gff && std::abs(total) > 1e-12)
                throw singular_configuration_error("GFF charges on the sphere must be neutral");
        }
    }

private:
    Configuration(Base b, DomainDescriptor dom, std::vector<MarkedPoint> pts)
        : base_(b), domain_(std::move(dom)), points_(std::move(pts)) {}

    Base base_;
    DomainDescriptor domain_;
    std::vector<MarkedPoint> points_;
    mutable std::optional<BoundaryCurve> boundary_;
    bool deformed_ = false;

    friend Configuration apply_action(const ConformalMap&, const Configuration&, ActionScope);
};

namespace detail {

// (dg)^delta (conj dg)^{delta-tilde}; the spinless case is |dg|^{2 delta},
// which avoids branch tracking entirely. Generic dimensions use principal
// logs, valid along paths where dg stays off the negative real axis.
inline cplx primary_jacobian(cplx dg, const PrimaryFieldData& f) {
    if (f.delta == f.delta_tilde) return std::pow(std::abs(dg), 2.0 * f.delta);
    cplx lg = std::log(dg);
    return std::exp(f.delta * lg + f.delta_tilde * std::conj(lg));
}

}  // namespace detail

// g . Sigma: transforms marked points (with their primary Jacobian factors),
// and the boundary curve when the domain carries one.
inline Configuration apply_action(const ConformalMap& g, const Configuration& sigma,
                                  ActionScope scope = ActionScope::all()) {
    Configuration out = sigma;

    auto move_point = [&](MarkedPoint& p) {
        cplx dg = g.deriv(p.position);
        if (!is_finite(dg) || std::abs(dg) < 1e-14)
            throw invalid_deformation_error("deformation is singular at a marked point");
        p.jacobian_factor *= detail::primary_jacobian(dg, p.field);
        p.position = g(p.position);
        if (!is_finite(p.position))
            throw invalid_deformation_error("deformation sends a marked point to infinity");
    };

    switch (scope.mode) {
        case ActionScope::Mode::all: {
            for (auto& p : out.points_) move_point(p);
            break;
        }
        case ActionScope::Mode::single_point: {
            if (scope.point_index < 0 ||
                scope.point_index >= static_cast<int>(out.points_.size()))
                throw config_error("single-point action index out of range");
            move_point(out.points_[scope.point_index]);
            break;
        }
        case ActionScope::Mode::boundary_only:
            break;
    }

    const bool move_boundary = scope.mode != ActionScope::Mode::single_point;
    if (move_boundary && sigma.base_ == Configuration::Base::halfplane) {
        // transported in physical coordinates, stored in Cayley coordinates
        out.set_boundary(sigma.boundary().mapped(
                             [&](cplx zeta) { return cayley(g(cayley_inv(zeta))); }),
                         true);
    } else if (move_boundary && sigma.deformed_) {
        out.set_boundary(sigma.boundary().mapped([&](cplx z) { return g(z); }), true);
    }
    return out;
}

// Functional on configurations, treated as an R^2-valued pair of its real and
// imaginary parts. Evaluators must be pure and reentrant.
struct Functional {
    std::function<cplx(const Configuration&)> evaluate;
    std::string name;
    bool supports_boundary = false;

    cplx operator()(const Configuration& sigma) const { return evaluate(sigma); }
};

inline Functional constant_functional(cplx value = 1.0) {
    return {[value](const Configuration&) { return value; }, "constant", true};
}

// Projection functionals used by engine tests.
inline Functional coordinate_functional(int point_index) {
    return {[point_index](const Configuration& s) {
                return cplx(s.points().at(point_index).position.real(), 0.0);
            },
            "re_z" + std::to_string(point_index), false};
}

}  // namespace confcalc
