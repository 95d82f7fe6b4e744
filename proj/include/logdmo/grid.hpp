#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

// Regularly sampled traces and common-offset sections. A section stores its
// samples trace-major (all samples of trace 0, then trace 1, ...), matching
// the on-disk layout in gridio.hpp.

namespace logdmo {

struct Trace {
    std::vector<double> samples;
    double dt = 0.0;       // s
    double t_start = 0.0;  // s, time of samples[0]

    [[nodiscard]] std::size_t n() const noexcept { return samples.size(); }
    [[nodiscard]] double t_end() const noexcept {
        return samples.empty() ? t_start
                               : t_start + dt * double(samples.size() - 1);
    }
};

struct Section {
    std::size_t n_t = 0;
    std::size_t n_x = 0;
    double dt = 0.0;       // s
    double dx = 0.0;       // m
    double t_start = 0.0;  // s
    double x_start = 0.0;  // m, midpoint of trace 0
    double h = 0.0;        // half offset, m, shared by every trace
    std::vector<double> data;  // trace-major, data[ix * n_t + it]

    [[nodiscard]] double& at(std::size_t it, std::size_t ix) {
        return data[ix * n_t + it];
    }
    [[nodiscard]] double at(std::size_t it, std::size_t ix) const {
        return data[ix * n_t + it];
    }
    [[nodiscard]] std::span<double> trace_view(std::size_t ix) {
        return {data.data() + ix * n_t, n_t};
    }
    [[nodiscard]] std::span<const double> trace_view(std::size_t ix) const {
        return {data.data() + ix * n_t, n_t};
    }
    [[nodiscard]] double t_end() const noexcept {
        return n_t == 0 ? t_start : t_start + dt * double(n_t - 1);
    }
    [[nodiscard]] double x_end() const noexcept {
        return n_x == 0 ? x_start : x_start + dx * double(n_x - 1);
    }
};

[[nodiscard]] inline Section make_section(std::size_t n_t, std::size_t n_x,
                                          double dt, double dx,
                                          double t_start, double x_start,
                                          double h) {
    Section s;
    s.n_t = n_t;
    s.n_x = n_x;
    s.dt = dt;
    s.dx = dx;
    s.t_start = t_start;
    s.x_start = x_start;
    s.h = h;
    s.data.assign(n_t * n_x, 0.0);
    return s;
}

/// Throws std::invalid_argument unless the section is well formed: nonzero
/// dims, positive steps, t_start > 0 (log stretch needs it), h >= 0, finite
/// geometry, and a data vector of exactly n_t * n_x samples.
inline void validate_section(const Section& s) {
    if (s.n_t == 0 || s.n_x == 0)
        throw std::invalid_argument("section: zero dimension");
    if (!(s.dt > 0.0) || !(s.dx > 0.0))
        throw std::invalid_argument("section: steps must be positive");
    if (!(s.t_start > 0.0))
        throw std::invalid_argument("section: t_start must be positive");
    if (!(s.h >= 0.0)) throw std::invalid_argument("section: h must be >= 0");
    if (!std::isfinite(s.dt) || !std::isfinite(s.dx) ||
        !std::isfinite(s.t_start) || !std::isfinite(s.x_start) ||
        !std::isfinite(s.h))
        throw std::invalid_argument("section: non-finite geometry");
    if (s.data.size() != s.n_t * s.n_x)
        throw std::invalid_argument("section: data size mismatch");
}

}  // namespace logdmo
