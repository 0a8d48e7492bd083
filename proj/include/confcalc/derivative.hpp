#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confcalc/configuration.hpp"
#include "confcalc/core.hpp"
#include "confcalc/vector_field.hpp"

namespace confcalc {

// A computed holomorphic / antiholomorphic derivative value with its step and
// Richardson error metadata, and the sector tag of the differentiability
// domain it was computed in.
struct HoloDerivative {
    cplx value = 0.0;
    double eta_used = 0.0;
    double error_estimate = 0.0;
    std::string sector;
    bool error_flagged = false;  // error estimate exceeded the requested tolerance
};

// Laurent tail of a holomorphic derivative: either the exterior expansion
// sum_{n=0..N} b_n z^{-n-1} (configurations inside the disk) or the interior
// expansion sum_{n<=2} b_n z^{-n-1} (configurations outside the closed disk).
struct HoloDerivativeTail {
    std::vector<cplx> coeffs;  // b_n along n = first_index, first_index + step, ...
    int first_index = 0;       // 0 for the disk case, 2 for the exterior case
    int step = +1;             // +1 disk case (n grows), -1 exterior case
    bool exterior_case = false;
    double eta_used = 0.0;
    double error_estimate = 0.0;
    bool diverging = false;

    cplx evaluate(cplx z) const {
        cplx acc = 0.0;
        int n = first_index;
        for (const cplx& b : coeffs) {
            acc += b * std::pow(z, -n - 1);
            n += step;
        }
        return acc;
    }
};

struct DerivativeOptions {
    double eta0 = 1e-3;          // base step, scaled by the configuration scale
    double tolerance = 1e-6;     // requested accuracy; exceeding it flags the result
    ActionScope scope = ActionScope::all();
    std::optional<cplx> anchor;  // overrides the default family anchor
};

// Directional derivative of f at Sigma along h (Definition: central difference
// through the deformation family anchored at `anchor`, at eta and eta/2,
// Richardson-combined). Returns the complex pair (d Re f, d Im f).
inline HoloDerivative directional_derivative(const Functional& f, const Configuration& sigma,
                                             const VectorField& h, cplx anchor,
                                             bool anchor_at_infinity,
                                             const DerivativeOptions& opt = {}) {
    const double eta = opt.eta0 * sigma.scale();
    auto value_at = [&](double e) {
        ConformalMap g = deformation_family(h, anchor, e, anchor_at_infinity);
        return f(apply_action(g, sigma, opt.scope));
    };
    cplx d_full, d_half;
    try {
        d_full = (value_at(eta) - value_at(-eta)) / (2.0 * eta);
        d_half = (value_at(eta / 2.0) - value_at(-eta / 2.0)) / eta;
    } catch (const numerical_error& e) {
        throw numerical_error(std::string(e.what()) + " (while differentiating at eta=" +
                              std::to_string(eta) + ")");
    }
    HoloDerivative out;
    out.value = (4.0 * d_half - d_full) / 3.0;
    out.eta_used = eta;
    out.error_estimate = std::abs(d_half - d_full) / 3.0 + 1e-15 * std::abs(out.value);
    out.error_flagged = out.error_estimate > opt.tolerance;
    return out;
}

// Partial derivative f_{n,s}: the directional derivative along the basis
// field H_{n,s}, anchored at infinity.
inline double partial_derivative(const Functional& f, const Configuration& sigma, int n, Sign s,
                                 const DerivativeOptions& opt = {}) {
    VectorField h = basis_field(n, s);
    return directional_derivative(f, sigma, h, 0.0, true, opt).value.real();
}

// Regularised holomorphic derivative at w by the two-phase form
//   Delta_w = 1/2 [ e^{-i pi/4} grad_{e^{+i pi/4} h^{(w)}} f
//                 + e^{+i pi/4} grad_{e^{-i pi/4} h^{(w)}} f ],
// with the deformation family anchored at w (or at opt.anchor inside the
// excised neighborhood of w; the value is anchor-independent).
inline HoloDerivative holo_derivative_point(const Functional& f, const Configuration& sigma,
                                            cplx w, const DerivativeOptions& opt = {}) {
    for (const auto& p : sigma.points())
        if (std::abs(p.position - w) < 1e-9)
            throw invalid_deformation_error("derivative point collides with a marked point");
    cplx anchor = opt.anchor.value_or(w);
    cplx php = basis_phase(Sign::plus);
    HoloDerivative dp =
        directional_derivative(f, sigma, pole_field(w, php, sigma.domain()), anchor, false, opt);
    HoloDerivative dm = directional_derivative(
        f, sigma, pole_field(w, std::conj(php), sigma.domain()), anchor, false, opt);
    HoloDerivative out;
    out.value = 0.5 * (std::conj(php) * dp.value + php * dm.value);
    out.eta_used = dp.eta_used;
    out.error_estimate = 0.5 * (dp.error_estimate + dm.error_estimate);
    out.error_flagged = out.error_estimate > opt.tolerance;
    out.sector = "[C-hat_w]";
    return out;
}

// Cross-check variant of the point derivative: the theta-quadrature form
// (1/2 pi) int dtheta e^{-i theta} grad_{e^{i theta} h^{(w)}} f.
inline HoloDerivative holo_derivative_point_quadrature(const Functional& f,
                                                       const Configuration& sigma, cplx w,
                                                       int n_theta = 16,
                                                       const DerivativeOptions& opt = {}) {
    cplx anchor = opt.anchor.value_or(w);
    HoloDerivative out;
    out.sector = "[C-hat_w]";
    for (int k = 0; k < n_theta; ++k) {
        double theta = 2.0 * pi * k / n_theta;
        HoloDerivative d = directional_derivative(
            f, sigma, pole_field(w, theta, sigma.domain()), anchor, false, opt);
        out.value += std::polar(1.0, -theta) * d.value / static_cast<double>(n_theta);
        out.error_estimate += d.error_estimate / n_theta;
        out.eta_used = d.eta_used;
    }
    return out;
}

// Antiholomorphic derivative via grad_{h^{(w)}} f = Delta_w + Delta-bar_wbar.
inline HoloDerivative antiholo_derivative_point(const Functional& f, const Configuration& sigma,
                                                cplx w, const DerivativeOptions& opt = {}) {
    cplx anchor = opt.anchor.value_or(w);
    HoloDerivative grad =
        directional_derivative(f, sigma, pole_field(w, 0.0, sigma.domain()), anchor, false, opt);
    HoloDerivative holo = holo_derivative_point(f, sigma, w, opt);
    HoloDerivative out;
    out.value = grad.value - holo.value;
    out.eta_used = holo.eta_used;
    out.error_estimate = grad.error_estimate + holo.error_estimate;
    out.sector = holo.sector;
    return out;
}

// Series form of the holomorphic derivative for configurations supported in
// the disk of radius r (anchor at infinity):
//   Delta_{infty;z} = 1/2 sum_{n,s} z^{-n-1} e^{-i pi s/4} f_{n,s},
// assembled through the transported basis of the radius-r disk so the scale
// relation Delta^{rD} = Delta^{D} is exercised rather than assumed.
inline HoloDerivativeTail holo_derivative_series(const Functional& f, const Configuration& sigma,
                                                 int N, double disk_radius = 1.0,
                                                 const DerivativeOptions& opt = {}) {
    HoloDerivativeTail tail;
    tail.first_index = 0;
    for (int n = 0; n <= N; ++n) {
        cplx b = 0.0;
        double err = 0.0;
        for (Sign s : {Sign::plus, Sign::minus}) {
            // transported basis field r^{1-n} H_{n,s} on the radius-r disk
            cplx coeff = basis_phase(s) * std::pow(disk_radius, 1 - n);
            VectorField h = VectorField::monomial(n, coeff, sigma.domain());
            HoloDerivative d = directional_derivative(f, sigma, h, 0.0, true, opt);
            b += 0.5 * std::conj(basis_phase(s)) * std::pow(disk_radius, n - 1) * d.value.real();
            err += d.error_estimate;
            tail.eta_used = d.eta_used;
        }
        tail.coeffs.push_back(b);
        tail.error_estimate = std::max(tail.error_estimate, err);
    }
    // non-decaying coefficients signal a configuration too close to the boundary
    if (N >= 6) {
        double peak = 0.0;
        for (const cplx& b : tail.coeffs) peak = std::max(peak, std::abs(b));
        double back = std::max(std::abs(tail.coeffs[N]), std::abs(tail.coeffs[N - 1]));
        tail.diverging = peak > 1e-10 && back > 0.5 * peak;
    }
    return tail;
}

// Exterior variant (configuration outside the closed unit disk, anchor 0):
//   Delta_{0;z} = -1/2 sum_{n<=2,s} z^{-n-1} e^{-i pi s/4} f_{n,s}.
inline HoloDerivativeTail holo_derivative_series_exterior(const Functional& f,
                                                          const Configuration& sigma, int N,
                                                          const DerivativeOptions& opt = {}) {
    HoloDerivativeTail tail;
    tail.first_index = 2;
    tail.step = -1;
    tail.exterior_case = true;
    for (int n = 2; n >= -N; --n) {
        cplx b = 0.0;
        for (Sign s : {Sign::plus, Sign::minus}) {
            VectorField h = VectorField::monomial(n, basis_phase(s), sigma.domain());
            HoloDerivative d = directional_derivative(f, sigma, h, 0.0, false, opt);
            b += -0.5 * std::conj(basis_phase(s)) * d.value.real();
            tail.eta_used = d.eta_used;
            tail.error_estimate = std::max(tail.error_estimate, d.error_estimate);
        }
        tail.coeffs.push_back(b);
    }
    return tail;
}

// Functional transported by a conformal map: (f o g^{-1})(Sigma') = f(g^{-1} . Sigma').
inline Functional pullback_functional(const Functional& f, const ConformalMap& g) {
    ConformalMap ginv = g.inverse();
    return {[f, ginv](const Configuration& sigma) { return f(apply_action(ginv, sigma)); },
            f.name + "_pulled_back", f.supports_boundary};
}

// A-connection of f at Sigma for the transformation g:
//   Theta_{w;g} = Delta_w f(Sigma) - (dg(w))^2 Delta_{g(w)} (f o g^{-1})(g . Sigma).
// Vanishes identically for Mobius g.
inline cplx connection_theta(const Functional& f, const Configuration& sigma,
                             const ConformalMap& g, cplx w, const DerivativeOptions& opt = {}) {
    HoloDerivative lhs = holo_derivative_point(f, sigma, w, opt);
    Configuration moved = apply_action(g, sigma);
    Functional fg = pullback_functional(f, g);
    HoloDerivative rhs = holo_derivative_point(fg, moved, g(w), opt);
    cplx dg = g.deriv(w);
    return lhs.value - dg * dg * rhs.value;
}

// Gamma_{w;g} = Delta_w f(Sigma) - (dg(w))^2 Delta_{g(w)} f(g . Sigma): the
// transport defect of the SAME functional between Sigma and g . Sigma.
inline cplx gamma_transport(const Functional& f, const Configuration& sigma,
                            const ConformalMap& g, cplx w, const DerivativeOptions& opt = {}) {
    HoloDerivative lhs = holo_derivative_point(f, sigma, w, opt);
    Configuration moved = apply_action(g, sigma);
    HoloDerivative rhs = holo_derivative_point(f, moved, g(w), opt);
    cplx dg = g.deriv(w);
    return lhs.value - dg * dg * rhs.value;
}

// |Delta_w f(Sigma) - (dG(w))^2 Delta_{G(w)} (f o G^{-1})(G . Sigma)| for a
// Mobius map G (Mobius covariance of the global derivative).
inline double check_mobius_covariance(const Functional& f, const Configuration& sigma,
                                      const ConformalMap& G, cplx w,
                                      const DerivativeOptions& opt = {}) {
    return std::abs(connection_theta(f, sigma, G, w, opt));
}

// |Delta_w (F o f) - F'(f(Sigma)) Delta_w f| for smooth real F applied to a
// real-valued functional.
inline double chain_rule_check(const Functional& f, const std::function<double(double)>& F,
                               const std::function<double(double)>& Fprime,
                               const Configuration& sigma, cplx w,
                               const DerivativeOptions& opt = {}) {
    Functional composed{[f, F](const Configuration& s) { return cplx(F(f(s).real()), 0.0); },
                        f.name + "_composed", f.supports_boundary};
    HoloDerivative lhs = holo_derivative_point(composed, sigma, w, opt);
    HoloDerivative df = holo_derivative_point(f, sigma, w, opt);
    return std::abs(lhs.value - Fprime(f(sigma).real()) * df.value);
}

// |Delta_w f - sum_j Delta_{w | point j} f - Delta_{w | boundary} f|: the
// multi-argument additivity of the regularised derivative.
inline double additivity_check(const Functional& f, const Configuration& sigma, cplx w,
                               const DerivativeOptions& opt = {}) {
    HoloDerivative full = holo_derivative_point(f, sigma, w, opt);
    cplx sum = 0.0;
    for (int j = 0; j < static_cast<int>(sigma.points().size()); ++j) {
        DerivativeOptions part = opt;
        part.scope = ActionScope::single_point(j);
        sum += holo_derivative_point(f, sigma, w, part).value;
    }
    if (f.supports_boundary && sigma.base() != Configuration::Base::sphere) {
        DerivativeOptions part = opt;
        part.scope = ActionScope::boundary_only();
        sum += holo_derivative_point(f, sigma, w, part).value;
    }
    return std::abs(full.value - sum);
}

}  // namespace confcalc
