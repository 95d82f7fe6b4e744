#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "grid.hpp"

// Test wavelets for impulse experiments.

namespace logdmo {

/// Zero-phase Ricker wavelet w(t) = (1 - 2 pi^2 f^2 t^2) e^{-pi^2 f^2 t^2},
/// sampled symmetrically about t = 0. half_width == 0 picks the smallest
/// half width with pi f t >= 6 at the edge, where the envelope is below
/// e^{-36} and truncation is invisible in double precision.
[[nodiscard]] inline Trace make_ricker(double peak_freq, double dt,
                                       std::size_t half_width = 0) {
    if (!(peak_freq > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("make_ricker: need positive freq and dt");
    const double pi = 3.14159265358979323846;
    if (half_width == 0) {
        half_width = std::size_t(std::ceil(6.0 / (pi * peak_freq * dt)));
    }
    Trace w;
    w.dt = dt;
    w.t_start = -dt * double(half_width);
    w.samples.resize(2 * half_width + 1);
    for (std::size_t i = 0; i < w.samples.size(); ++i) {
        const double t = w.t_start + dt * double(i);
        const double a = pi * peak_freq * t;
        const double a2 = a * a;
        w.samples[i] = (1.0 - 2.0 * a2) * std::exp(-a2);
    }
    return w;
}

}  // namespace logdmo
