#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "grid.hpp"
#include "parallel.hpp"

// Reference results computed straight from the integral definitions in
// plain (unstretched) time, with no transforms, stretches, or
// interpolation. Everything here is O(grid * bins) brute force: slow on
// purpose, simple enough to trust, and capped at desk scale.
//
// For an input sample at (t_n, x_n) and a transform-domain point (omega, k)
// the integrand is w(A) * e^{+i (omega t_n A - k x_n)} with
// A = sqrt(1 + (h k / (t_n omega))^2); omega == 0 means A = 1. The two
// weight conventions disagree in amplitude only:
//   Hale   w = 1 / A
//   Black  w = (2 A^2 - 1) / A^3
// so on a single live sample their phases match exactly and their
// magnitudes differ by the factor A^2 / (2 A^2 - 1).

namespace logdmo {

enum class WeightKind { Hale, Black };

/// Amplitude-smearing factor for one sample; A >= 1 always.
[[nodiscard]] inline double stationary_a(double t_n, double h, double omega,
                                         double k) {
    if (!(t_n > 0.0)) throw std::invalid_argument("stationary_a: t_n must be > 0");
    if (omega == 0.0) return 1.0;
    const double q = h * k / (t_n * omega);
    return std::sqrt(1.0 + q * q);
}

[[nodiscard]] inline double integrand_weight(WeightKind kind, double a) noexcept {
    if (kind == WeightKind::Hale) return 1.0 / a;
    const double a2 = a * a;
    return (2.0 * a2 - 1.0) / (a2 * a);
}

/// Where one reflection sample moves under each convention's kinematics,
/// parameterized by the local slope p = k / omega (s/m).
struct KinematicPoint {
    double t0 = 0.0;
    double x0 = 0.0;
    double a = 1.0;
};

/// Black kinematics: t0 = t_n / A, x0 = x_n - (h^2 p) / (A t_n). The image
/// time never exceeds t_n.
[[nodiscard]] inline KinematicPoint black_map(double t_n, double x_n, double h,
                                              double p) {
    if (!(t_n > 0.0)) throw std::invalid_argument("black_map: t_n must be > 0");
    if (!std::isfinite(p)) throw std::invalid_argument("black_map: p must be finite");
    const double q = h * p / t_n;
    const double a = std::sqrt(1.0 + q * q);
    return {t_n / a, x_n - h * h * p / (a * t_n), a};
}

/// Hale kinematics: the image stays at the input midpoint and the time
/// dilates, t0 = A t_n.
[[nodiscard]] inline KinematicPoint hale_map(double t_n, double x_n, double h,
                                             double p) {
    if (!(t_n > 0.0)) throw std::invalid_argument("hale_map: t_n must be > 0");
    if (!std::isfinite(p)) throw std::invalid_argument("hale_map: p must be finite");
    const double q = h * p / t_n;
    const double a = std::sqrt(1.0 + q * q);
    return {a * t_n, x_n, a};
}

/// Zero-offset time of the moveout ellipse at midpoint displacement dx from
/// the apex: t0 = t_n sqrt(1 - (dx/h)^2). Requires |dx| <= h.
[[nodiscard]] inline double ellipse_point(double t_n, double h, double dx) {
    if (!(t_n > 0.0)) throw std::invalid_argument("ellipse_point: t_n must be > 0");
    if (!(h > 0.0)) throw std::invalid_argument("ellipse_point: h must be > 0");
    const double r = dx / h;
    if (std::fabs(r) > 1.0)
        throw std::invalid_argument("ellipse_point: |dx| exceeds h");
    return t_n * std::sqrt(1.0 - r * r);
}

struct DirectSpectrum {
    std::vector<std::complex<double>> bins;  // row-major [omega][k]
    std::vector<double> omega;               // rad/s
    std::vector<double> k;                   // rad/m

    [[nodiscard]] std::complex<double> at(std::size_t j, std::size_t m) const {
        return bins[j * k.size() + m];
    }
};

/// Hard cap on every direct-integral axis. The quadruple loop is meant for
/// checking pipelines, not running them; the cap keeps an accidental
/// production-size call from burning hours.
inline constexpr std::size_t kDirectMaxAxis = 128;

/// Brute-force spectrum of a section under one weight convention,
/// trapezoid-ruled over the grid (half weight on edge samples, measure
/// dt * dx). Zero samples contribute nothing and are skipped.
[[nodiscard]] inline DirectSpectrum direct_dmo(const Section& s,
                                               WeightKind kind,
                                               std::span<const double> omegas,
                                               std::span<const double> ks,
                                               unsigned threads = 0) {
    validate_section(s);
    if (omegas.empty() || ks.empty())
        throw std::invalid_argument("direct_dmo: empty bin axis");
    if (s.n_t > kDirectMaxAxis || s.n_x > kDirectMaxAxis ||
        omegas.size() > kDirectMaxAxis || ks.size() > kDirectMaxAxis)
        throw std::invalid_argument("direct_dmo: axis exceeds the desk-scale cap");

    struct Live {
        double t_n;
        double x_n;
        double q;  // sample value folded with quadrature weights
    };
    std::vector<Live> live;
    for (std::size_t ix = 0; ix < s.n_x; ++ix) {
        const double wx = (ix == 0 || ix + 1 == s.n_x) ? 0.5 : 1.0;
        for (std::size_t it = 0; it < s.n_t; ++it) {
            const double v = s.at(it, ix);
            if (v == 0.0) continue;
            const double wt = (it == 0 || it + 1 == s.n_t) ? 0.5 : 1.0;
            live.push_back({s.t_start + s.dt * double(it),
                            s.x_start + s.dx * double(ix),
                            v * wt * wx * s.dt * s.dx});
        }
    }

    DirectSpectrum d;
    d.omega.assign(omegas.begin(), omegas.end());
    d.k.assign(ks.begin(), ks.end());
    d.bins.assign(omegas.size() * ks.size(), {0.0, 0.0});
    parallel_for(d.bins.size(), threads, [&](std::size_t b) {
        const double omega = d.omega[b / d.k.size()];
        const double kk = d.k[b % d.k.size()];
        std::complex<double> acc{0.0, 0.0};
        for (const Live& lv : live) {
            const double a = stationary_a(lv.t_n, s.h, omega, kk);
            const double ph = omega * lv.t_n * a - kk * lv.x_n;
            acc += integrand_weight(kind, a) * lv.q *
                   std::complex<double>(std::cos(ph), std::sin(ph));
        }
        d.bins[b] = acc;
    });
    return d;
}

}  // namespace logdmo
