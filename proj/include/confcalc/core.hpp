#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace confcalc {

using cplx = std::complex<double>;
using analytic_fn = std::function<cplx(cplx)>;

inline constexpr double pi = 3.14159265358979323846;
inline const cplx iu{0.0, 1.0};

inline bool is_finite(cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// ---------------------------------------------------------------------------
// Error types. All numerical failures are reported as exceptions carrying
// enough context to diagnose the offending solve.
// ---------------------------------------------------------------------------

struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct contour_singularity_error : numerical_error {
    using numerical_error::numerical_error;
};

// Newton or fixed-point iteration failed to converge; carries the last iterate.
struct no_convergence_error : numerical_error {
    cplx last_iterate{};
    double last_residual = std::numeric_limits<double>::quiet_NaN();
    no_convergence_error(const std::string& msg, cplx last, double resid)
        : numerical_error(msg), last_iterate(last), last_residual(resid) {}
};

// Flow trajectory left the vector field's domain; carries the largest valid time.
struct horizon_exceeded_error : numerical_error {
    double max_valid_t;
    horizon_exceeded_error(const std::string& msg, double t)
        : numerical_error(msg), max_valid_t(t) {}
};

struct step_too_large_error : numerical_error {
    using numerical_error::numerical_error;
};

struct invalid_deformation_error : numerical_error {
    using numerical_error::numerical_error;
};

struct singular_configuration_error : numerical_error {
    using numerical_error::numerical_error;
};

struct degenerate_derivative_error : numerical_error {
    using numerical_error::numerical_error;
};

struct deviation_too_large_error : numerical_error {
    double last_residual;
    deviation_too_large_error(const std::string& msg, double resid)
        : numerical_error(msg), last_residual(resid) {}
};

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Deterministic RNG used by randomized property trials (seed 0 by default).
// ---------------------------------------------------------------------------

class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }

    // uniform in the disk |z - center| < radius
    cplx in_disk(cplx center = 0.0, double radius = 1.0) {
        double r = radius * std::sqrt(uniform(0.0, 1.0));
        double t = uniform(0.0, 2.0 * pi);
        return center + r * std::polar(1.0, t);
    }

    cplx in_annulus(double r_in, double r_out, cplx center = 0.0) {
        double r = std::sqrt(uniform(r_in * r_in, r_out * r_out));
        return center + r * std::polar(1.0, uniform(0.0, 2.0 * pi));
    }

private:
    std::mt19937_64 eng_;
};

// Equispaced points on the circle |z - center| = radius.
inline std::vector<cplx> circle_points(cplx center, double radius, int n) {
    std::vector<cplx> pts;
    pts.reserve(n);
    for (int k = 0; k < n; ++k)
        pts.push_back(center + radius * std::polar(1.0, 2.0 * pi * k / n));
    return pts;
}

}  // namespace confcalc
