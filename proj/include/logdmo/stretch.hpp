#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "grid.hpp"
#include "interp.hpp"

// Log stretch tau = ln(t / t_c) and its inverse, both band-limited
// resamplings onto uniform grids. The stretched grid spans
// [ln(t_start/t_c), ln(t_end/t_c)] inclusive, so the trace endpoints map to
// stretched endpoints and the round trip loses nothing at the edges.

namespace logdmo {

struct StretchedTrace {
    std::vector<double> samples;
    double dtau = 0.0;
    double tau_start = 0.0;
    double t_c = 0.0;  // reference time of the stretch, s

    [[nodiscard]] std::size_t n() const noexcept { return samples.size(); }
    [[nodiscard]] double tau_end() const noexcept {
        return samples.empty()
                   ? tau_start
                   : tau_start + dtau * double(samples.size() - 1);
    }
};

struct TimeGrid {
    double t_start = 0.0;
    double dt = 0.0;
    std::size_t n = 0;
};

[[nodiscard]] inline std::size_t next_pow2(std::size_t n) noexcept {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

/// Default stretched-grid length: the smallest power of two at or above 2n.
/// Twofold oversampling keeps the early-time squeeze of the stretch from
/// aliasing typical band-limited data; callers needing tighter round trips
/// pass a larger n_tau explicitly.
[[nodiscard]] inline std::size_t default_n_tau(std::size_t n_t) noexcept {
    return next_pow2(2 * n_t);
}

/// Resample a trace onto n_tau uniform samples of tau = ln(t / t_c).
/// n_tau == 0 picks default_n_tau(tr.n()). Throws std::invalid_argument on
/// malformed input (needs tr.n() >= 2, dt > 0, 0 < t_c <= t_start, so tau
/// starts at or above zero).
[[nodiscard]] inline StretchedTrace log_stretch(const Trace& tr, double t_c,
                                                std::size_t n_tau = 0) {
    if (tr.n() < 2) throw std::invalid_argument("log_stretch: need >= 2 samples");
    if (!(tr.dt > 0.0) || !std::isfinite(tr.dt))
        throw std::invalid_argument("log_stretch: dt must be positive");
    if (!(tr.t_start > 0.0) || !std::isfinite(tr.t_start))
        throw std::invalid_argument("log_stretch: t_start must be positive");
    if (!(t_c > 0.0) || !std::isfinite(t_c))
        throw std::invalid_argument("log_stretch: t_c must be positive");
    if (tr.t_start < t_c)
        throw std::invalid_argument("log_stretch: t_c must not exceed t_start");
    if (n_tau == 0) n_tau = default_n_tau(tr.n());
    if (n_tau < 2) throw std::invalid_argument("log_stretch: n_tau must be >= 2");

    StretchedTrace st;
    st.t_c = t_c;
    st.tau_start = std::log(tr.t_start / t_c);
    const double tau_end = std::log(tr.t_end() / t_c);
    st.dtau = (tau_end - st.tau_start) / double(n_tau - 1);
    st.samples.resize(n_tau);
    const double n_last = double(tr.n() - 1);
    for (std::size_t j = 0; j < n_tau; ++j) {
        const double tau = st.tau_start + st.dtau * double(j);
        const double t = t_c * std::exp(tau);
        double u = (t - tr.t_start) / tr.dt;
        if (u < 0.0) u = 0.0;
        if (u > n_last) u = n_last;
        st.samples[j] = sample_at(tr.samples, u);
    }
    return st;
}

/// Resample a stretched trace back onto the given time grid. Every output
/// time must land inside the stretched span (one sample of slack is allowed
/// for rounding); a grid reaching beyond it throws std::invalid_argument.
[[nodiscard]] inline Trace inverse_log_stretch(const StretchedTrace& st,
                                               const TimeGrid& out) {
    if (st.n() < 2)
        throw std::invalid_argument("inverse_log_stretch: need >= 2 samples");
    if (!(st.dtau > 0.0) || !(st.t_c > 0.0))
        throw std::invalid_argument("inverse_log_stretch: malformed stretch");
    if (out.n < 2 || !(out.dt > 0.0) || !(out.t_start > 0.0))
        throw std::invalid_argument("inverse_log_stretch: malformed time grid");

    Trace tr;
    tr.dt = out.dt;
    tr.t_start = out.t_start;
    tr.samples.resize(out.n);
    const double n_last = double(st.n() - 1);
    for (std::size_t i = 0; i < out.n; ++i) {
        const double t = out.t_start + out.dt * double(i);
        const double tau = std::log(t / st.t_c);
        double u = (tau - st.tau_start) / st.dtau;
        if (u < -1.0 || u > n_last + 1.0) {
            throw std::invalid_argument(
                "inverse_log_stretch: time grid leaves the stretched span");
        }
        if (u < 0.0) u = 0.0;
        if (u > n_last) u = n_last;
        tr.samples[i] = sample_at(st.samples, u);
    }
    return tr;
}

}  // namespace logdmo
