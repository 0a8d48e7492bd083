#pragma once

#include <memory>
#include <utility>

#include "confcalc/core.hpp"

namespace confcalc {

// Cayley transform H -> D and its inverse, used wherever half-plane setups
// are conjugated to the disk.
inline cplx cayley(cplx z) { return (z - iu) / (z + iu); }
inline cplx cayley_inv(cplx w) { return iu * (1.0 + w) / (1.0 - w); }
inline cplx cayley_deriv(cplx z) { return 2.0 * iu / ((z + iu) * (z + iu)); }
inline cplx cayley_inv_deriv(cplx w) { return 2.0 * iu / ((1.0 - w) * (1.0 - w)); }

// Descriptor of the analyticity domain of a map or vector field. Analytic
// kinds support exact membership tests; image kinds carry the forward map
// and delegate probe-grid generation to the base domain.
class DomainDescriptor {
public:
    enum class Kind {
        disk,                  // |z - center| < radius (unit disk by default)
        exterior,              // |z - center| > radius, including infinity
        halfplane,             // Im z > 0
        sphere,                // all of C-hat
        annulus,               // r < |z - center| < R
        mobius_image,          // Mobius image of a base domain
        map_image,             // image of a base domain under a conformal map
        punctured_complement,  // C-hat minus the closed disk |z - w| <= radius
    };

    static DomainDescriptor unit_disk() { return DomainDescriptor(Kind::disk, 0.0, 0.0, 1.0); }
    static DomainDescriptor disk(cplx center, double radius) {
        return DomainDescriptor(Kind::disk, center, 0.0, radius);
    }
    static DomainDescriptor exterior(cplx center = 0.0, double radius = 1.0) {
        return DomainDescriptor(Kind::exterior, center, radius, 0.0);
    }
    static DomainDescriptor halfplane() { return DomainDescriptor(Kind::halfplane, 0.0, 0.0, 0.0); }
    static DomainDescriptor sphere() { return DomainDescriptor(Kind::sphere, 0.0, 0.0, 0.0); }
    static DomainDescriptor annulus(double r, double R, cplx center = 0.0) {
        if (!(0.0 < r && r < R)) throw config_error("annulus requires 0 < r < R");
        return DomainDescriptor(Kind::annulus, center, r, R);
    }
    // C-hat_w: the sphere with a closed disk around w removed
    static DomainDescriptor punctured_complement(cplx w, double radius) {
        if (radius <= 0.0) throw config_error("punctured complement requires radius > 0");
        return DomainDescriptor(Kind::punctured_complement, w, radius, 0.0);
    }
    static DomainDescriptor image_of(const DomainDescriptor& base, analytic_fn forward,
                                     bool is_mobius = false) {
        DomainDescriptor d(is_mobius ? Kind::mobius_image : Kind::map_image, 0.0, 0.0, 0.0);
        d.base_ = std::make_shared<DomainDescriptor>(base);
        d.forward_ = std::move(forward);
        return d;
    }

    Kind kind() const { return kind_; }
    cplx center() const { return center_; }
    double inner_radius() const { return inner_; }
    double outer_radius() const { return outer_; }
    const DomainDescriptor* base() const { return base_.get(); }

    bool contains_infinity() const {
        switch (kind_) {
            case Kind::exterior:
            case Kind::sphere:
            case Kind::punctured_complement:
                return true;
            case Kind::mobius_image:
            case Kind::map_image:
                // image kinds are only used for bounded deformations of the base
                return base_ && base_->contains_infinity();
            default:
                return false;
        }
    }

    // Exact for analytic kinds; image kinds trust construction (the deformed
    // configurations that carry them keep their own boundary data).
    bool contains(cplx z) const {
        switch (kind_) {
            case Kind::disk: return std::abs(z - center_) < outer_;
            case Kind::exterior: return std::abs(z - center_) > inner_;
            case Kind::halfplane: return z.imag() > 0.0;
            case Kind::sphere: return true;
            case Kind::annulus: {
                double r = std::abs(z - center_);
                return inner_ < r && r < outer_;
            }
            case Kind::punctured_complement: return std::abs(z - center_) > inner_;
            default: return true;
        }
    }

    // Two concentric probe circles (64 points total), used for analyticity
    // and invariant checks.
    std::vector<cplx> probe_points(int n = 64) const {
        const int half = n / 2;
        switch (kind_) {
            case Kind::disk: {
                auto a = circle_points(center_, 0.45 * outer_, half);
                auto b = circle_points(center_, 0.85 * outer_, n - half);
                a.insert(a.end(), b.begin(), b.end());
                return a;
            }
            case Kind::exterior: {
                auto a = circle_points(center_, 1.3 * inner_, half);
                auto b = circle_points(center_, 3.0 * inner_, n - half);
                a.insert(a.end(), b.begin(), b.end());
                return a;
            }
            case Kind::halfplane: {
                std::vector<cplx> pts;
                auto base = DomainDescriptor::unit_disk().probe_points(n);
                pts.reserve(n);
                for (cplx p : base) pts.push_back(cayley_inv(p * 0.9));
                return pts;
            }
            case Kind::sphere: {
                auto a = circle_points(0.0, 0.7, half);
                auto b = circle_points(0.0, 2.2, n - half);
                a.insert(a.end(), b.begin(), b.end());
                return a;
            }
            case Kind::annulus: {
                double mid = std::sqrt(inner_ * outer_);
                auto a = circle_points(center_, std::sqrt(inner_ * mid), half);
                auto b = circle_points(center_, std::sqrt(mid * outer_), n - half);
                a.insert(a.end(), b.begin(), b.end());
                return a;
            }
            case Kind::punctured_complement: {
                auto a = circle_points(center_, 1.6 * inner_, half);
                auto b = circle_points(center_, 4.0 * inner_, n - half);
                a.insert(a.end(), b.begin(), b.end());
                return a;
            }
            case Kind::mobius_image:
            case Kind::map_image: {
                auto pts = base_->probe_points(n);
                for (cplx& p : pts) p = forward_(p);
                return pts;
            }
        }
        return {};
    }

private:
    DomainDescriptor(Kind k, cplx c, double inner, double outer)
        : kind_(k), center_(c), inner_(inner), outer_(outer) {}

    Kind kind_;
    cplx center_;
    double inner_ = 0.0;  // annulus r / exterior radius / excised radius
    double outer_ = 0.0;  // annulus R / disk radius
    std::shared_ptr<DomainDescriptor> base_;
    analytic_fn forward_;
};

}  // namespace confcalc
