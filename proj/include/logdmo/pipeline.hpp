#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>

#include "fk.hpp"
#include "grid.hpp"
#include "interp.hpp"
#include "kernel.hpp"
#include "parallel.hpp"
#include "stretch.hpp"

// The five-step moveout pipeline on a common-offset section:
//   1. log-stretch every trace onto a shared tau grid
//   2. forward 2-D transform of the stretched section
//   3. multiply by the operator's phase filter
//   4. inverse transform
//   5. resample every trace back onto the input time grid
//
// Steps 1 and 5 are per-trace and parallel over traces; 2-4 live in
// fk.hpp. Every parallel loop writes disjoint slots keyed by index, so the
// output is bit-identical for any thread count.

namespace logdmo {

struct DmoConfig {
    OperatorKind op = OperatorKind::ZhouExact;

    /// Stretch reference time; disengaged picks the section's t_start so
    /// tau starts at zero.
    std::optional<double> t_c;

    /// Stretched samples per trace; 0 picks default_n_tau(n_t).
    std::size_t n_tau = 0;

    SingularPolicy policy = SingularPolicy::Zero;

    /// Zero padding before the transform. Disengaged pad_x picks
    /// ceil(h / dx): the widest midpoint shift any operator applies is h,
    /// so that much slack keeps moveout from wrapping around the section.
    /// Disengaged pad_tau picks n_tau / 2.
    std::optional<std::size_t> pad_x;
    std::optional<std::size_t> pad_tau;

    /// Worker threads; 0 picks the hardware count.
    unsigned threads = 0;
};

/// Apply the configured operator to a section. h == 0 is the identity (zero
/// offset needs no moveout) and returns a copy without resampling.
[[nodiscard]] inline Section run_dmo(const Section& in, const DmoConfig& cfg) {
    validate_section(in);
    if (in.n_t < 2) throw std::invalid_argument("run_dmo: need >= 2 samples");
    const double t_c = cfg.t_c.value_or(in.t_start);
    if (!(t_c > 0.0) || !std::isfinite(t_c))
        throw std::invalid_argument("run_dmo: t_c must be positive");
    if (t_c > in.t_start)
        throw std::invalid_argument("run_dmo: t_c must not exceed t_start");
    if (in.h == 0.0) return in;

    const std::size_t n_tau = cfg.n_tau != 0 ? cfg.n_tau : default_n_tau(in.n_t);
    if (n_tau < 2) throw std::invalid_argument("run_dmo: n_tau must be >= 2");
    const std::size_t pad_x =
        cfg.pad_x ? *cfg.pad_x : std::size_t(std::ceil(in.h / in.dx));
    const std::size_t pad_tau = cfg.pad_tau ? *cfg.pad_tau : n_tau / 2;

    // Step 1: stretch trace 0 to fix the shared tau grid, then the rest.
    Trace probe;
    probe.dt = in.dt;
    probe.t_start = in.t_start;
    probe.samples.assign(in.trace_view(0).begin(), in.trace_view(0).end());
    const StretchedTrace st0 = log_stretch(probe, t_c, n_tau);

    Section stretched = make_section(n_tau, in.n_x, st0.dtau, in.dx,
                                     st0.tau_start, in.x_start, in.h);
    parallel_for(in.n_x, cfg.threads, [&](std::size_t ix) {
        Trace tr;
        tr.dt = in.dt;
        tr.t_start = in.t_start;
        tr.samples.assign(in.trace_view(ix).begin(), in.trace_view(ix).end());
        const StretchedTrace st = log_stretch(tr, t_c, n_tau);
        auto dst = stretched.trace_view(ix);
        for (std::size_t j = 0; j < n_tau; ++j) dst[j] = st.samples[j];
    });

    // Steps 2-4.
    const Spectrum sp = forward_fk(stretched, pad_tau, pad_x, cfg.threads);
    const Spectrum filtered =
        apply_phase_filter(sp, cfg.op, cfg.policy, cfg.threads);
    const Section back = inverse_fk(filtered, 1e-10, cfg.threads);

    // Step 5.
    Section out = make_section(in.n_t, in.n_x, in.dt, in.dx, in.t_start,
                               in.x_start, in.h);
    const TimeGrid grid{in.t_start, in.dt, in.n_t};
    parallel_for(in.n_x, cfg.threads, [&](std::size_t ix) {
        StretchedTrace st;
        st.dtau = back.dt;
        st.tau_start = back.t_start;
        st.t_c = t_c;
        st.samples.assign(back.trace_view(ix).begin(),
                          back.trace_view(ix).end());
        const Trace tr = inverse_log_stretch(st, grid);
        auto dst = out.trace_view(ix);
        for (std::size_t i = 0; i < in.n_t; ++i) dst[i] = tr.samples[i];
    });
    return out;
}

/// Paint one wavelet at (t_imp, x_imp) on an otherwise zero section and run
/// the operator over it. The impulse must land inside the grid; its trace
/// is the nearest midpoint column. Painted values are quantized to float32
/// so responses match bit for bit whether the input came through memory or
/// through a section file (files store float32 samples).
[[nodiscard]] inline Section impulse_response(const Section& geometry,
                                              const DmoConfig& cfg,
                                              double t_imp, double x_imp,
                                              const Trace& wavelet) {
    validate_section(geometry);
    if (wavelet.n() < 2 || !(wavelet.dt > 0.0))
        throw std::invalid_argument("impulse_response: malformed wavelet");
    if (t_imp < geometry.t_start || t_imp > geometry.t_end())
        throw std::invalid_argument("impulse_response: t_imp outside grid");
    if (x_imp < geometry.x_start || x_imp > geometry.x_end())
        throw std::invalid_argument("impulse_response: x_imp outside grid");

    Section s = make_section(geometry.n_t, geometry.n_x, geometry.dt,
                             geometry.dx, geometry.t_start, geometry.x_start,
                             geometry.h);
    const std::size_t ix =
        std::size_t(std::llround((x_imp - s.x_start) / s.dx));
    auto col = s.trace_view(ix);
    const double n_last = double(wavelet.n() - 1);
    for (std::size_t it = 0; it < s.n_t; ++it) {
        const double t = s.t_start + s.dt * double(it);
        const double u = (t - t_imp - wavelet.t_start) / wavelet.dt;
        if (u < 0.0 || u > n_last) continue;
        col[it] = double(float(sample_at(wavelet.samples, u)));
    }
    return run_dmo(s, cfg);
}

}  // namespace logdmo
