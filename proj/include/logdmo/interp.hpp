#pragma once

#include <cmath>
#include <cstddef>
#include <span>

// Band-limited resampling: 8-point Kaiser-windowed sinc. Taps that fall
// outside the trace read zero and the remaining weights are renormalized,
// so a constant trace is reproduced exactly at any in-range position.

namespace logdmo {

/// Half width of the sinc kernel; 2*kSincHalfWidth taps per sample.
inline constexpr int kSincHalfWidth = 4;

/// Kaiser shape for the interpolation window. Measured on band-limited
/// input (Ricker at half Nyquist), beta = 6.0 minimizes stretch round-trip
/// error; sharper windows ring, softer ones blur.
inline constexpr double kKaiserBeta = 6.0;

/// Modified Bessel function I0 by its power series; converges in ~25 terms
/// for the argument range the window uses.
[[nodiscard]] inline double bessel_i0(double x) noexcept {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int m = 1; m < 64; ++m) {
        term *= q / (double(m) * double(m));
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

namespace detail {

[[nodiscard]] inline double sinc_pi(double d) noexcept {
    if (d == 0.0) return 1.0;
    const double pd = 3.14159265358979323846 * d;
    return std::sin(pd) / pd;
}

[[nodiscard]] inline double kaiser(double d, double beta) noexcept {
    const double r = d / double(kSincHalfWidth);
    const double arg = 1.0 - r * r;
    if (arg <= 0.0) return 0.0;
    return bessel_i0(beta * std::sqrt(arg)) / bessel_i0(beta);
}

}  // namespace detail

/// Value of the trace at fractional index u (samples x are at 0, 1, ...).
/// Returns 0 when every tap is out of range.
[[nodiscard]] inline double sample_at(std::span<const double> x,
                                      double u) noexcept {
    if (x.empty()) return 0.0;
    const double fl = std::floor(u);
    const long i0 = long(fl) - (kSincHalfWidth - 1);
    double acc = 0.0;
    double wsum = 0.0;
    for (int t = 0; t < 2 * kSincHalfWidth; ++t) {
        const long i = i0 + t;
        if (i < 0 || i >= long(x.size())) continue;
        const double d = u - double(i);
        const double w = detail::sinc_pi(d) * detail::kaiser(d, kKaiserBeta);
        acc += w * x[std::size_t(i)];
        wsum += w;
    }
    if (wsum == 0.0) return 0.0;
    return acc / wsum;
}

}  // namespace logdmo
