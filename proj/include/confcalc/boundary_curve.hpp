#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "confcalc/core.hpp"

namespace confcalc {

// Analytic Jordan curve as a Fourier series gamma(t) = sum_k c_k e^{ikt},
// k in [-N, N], nearly circular about a center. The polar radius function
// about the center is what the Theodorsen solver consumes.
class BoundaryCurve {
public:
    BoundaryCurve() = default;

    // Build from samples at equispaced parameters t_j = offset + 2 pi j / M.
    static BoundaryCurve from_samples(const std::vector<cplx>& samples, double offset,
                                      cplx center, bool validate = true) {
        const int m = static_cast<int>(samples.size());
        BoundaryCurve c;
        c.center_ = center;
        const int nmax = m / 2 - 1;
        c.coeffs_.assign(2 * nmax + 1, 0.0);
        for (int k = -nmax; k <= nmax; ++k) {
            cplx acc = 0.0;
            for (int j = 0; j < m; ++j) {
                double t = offset + 2.0 * pi * j / m;
                acc += samples[j] * std::polar(1.0, -k * t);
            }
            c.coeffs_[k + nmax] = acc / static_cast<double>(m);
        }
        c.nmax_ = nmax;
        double mean = 0.0;
        for (const cplx& s : samples) mean += std::abs(s - center);
        c.mean_radius_ = mean / m;
        if (validate) c.check_invariants();
        return c;
    }

    static BoundaryCurve circle(cplx center, double radius, int nmax = 8) {
        std::vector<cplx> coeffs(2 * nmax + 1, 0.0);
        coeffs[nmax] = center;      // constant mode
        coeffs[nmax + 1] = radius;  // mode k = +1
        BoundaryCurve c;
        c.center_ = center;
        c.coeffs_ = std::move(coeffs);
        c.nmax_ = nmax;
        c.mean_radius_ = radius;
        return c;
    }

    // Image of this curve under a conformal map, resampled at the same resolution.
    template <typename F>
    BoundaryCurve mapped(F&& g, bool validate = false) const {
        const int m = std::max(256, 2 * nmax_ + 2);
        std::vector<cplx> samples(m);
        const double offset = pi / m;  // dodge parameter t = 0
        for (int j = 0; j < m; ++j) samples[j] = g(evaluate(offset + 2.0 * pi * j / m));
        return from_samples(samples, offset, center_, validate);
    }

    cplx evaluate(double t) const {
        cplx acc = 0.0;
        for (int k = -nmax_; k <= nmax_; ++k)
            acc += coeffs_[k + nmax_] * std::polar(1.0, k * t);
        return acc;
    }

    cplx derivative(double t) const {
        cplx acc = 0.0;
        for (int k = -nmax_; k <= nmax_; ++k)
            acc += coeffs_[k + nmax_] * cplx(0.0, k) * std::polar(1.0, k * t);
        return acc;
    }

    cplx center() const { return center_; }
    double mean_radius() const { return mean_radius_; }
    int max_mode() const { return nmax_; }
    double coeff_magnitude(int k) const {
        return std::abs(k) > nmax_ ? 0.0 : std::abs(coeffs_[k + nmax_]);
    }

    // Polar radius about the center: solves arg(gamma(t) - c) = phi for the
    // parameter by Newton (valid in the star-like, nearly circular regime).
    double polar_radius(double phi) const {
        double t = phi;
        for (int it = 0; it < 40; ++it) {
            cplx u = evaluate(t) - center_;
            double f = std::arg(u * std::polar(1.0, -phi));
            if (std::abs(f) < 5e-15) break;
            double df = (derivative(t) / u).imag();
            t -= f / df;
        }
        return std::abs(evaluate(t) - center_);
    }

    // Relative deviation of the curve from its mean circle.
    double relative_deviation(int samples = 256) const {
        double worst = 0.0;
        for (int j = 0; j < samples; ++j) {
            double r = std::abs(evaluate(2.0 * pi * j / samples) - center_);
            worst = std::max(worst, std::abs(r - mean_radius_) / mean_radius_);
        }
        return worst;
    }

    void check_invariants() const {
        if (relative_deviation() > 0.3)
            throw deviation_too_large_error("curve deviates more than 30% from its mean circle",
                                            relative_deviation());
        if (!is_jordan())
            throw invalid_deformation_error("curve samples self-intersect");
    }

    // Coarse Jordan check on sampled chords: in the star-like regime it is
    // enough that the polar angle about the center winds monotonically.
    bool is_jordan(int samples = 512) const {
        double prev = std::arg(evaluate(0.0) - center_);
        double total = 0.0;
        for (int j = 1; j <= samples; ++j) {
            double a = std::arg(evaluate(2.0 * pi * j / samples) - center_);
            double d = a - prev;
            while (d > pi) d -= 2.0 * pi;
            while (d < -pi) d += 2.0 * pi;
            if (d <= 0.0) return false;
            total += d;
            prev = a;
        }
        return std::abs(total - 2.0 * pi) < 1e-6;
    }

private:
    cplx center_ = 0.0;
    std::vector<cplx> coeffs_{0.0, 1.0, 0.0};  // unit circle by default
    int nmax_ = 1;
    double mean_radius_ = 1.0;
};

}  // namespace confcalc
