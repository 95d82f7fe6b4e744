#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "grid.hpp"
#include "interp.hpp"
#include "kernel.hpp"

// Diagnostics: splitting operator phase into shift terms, asymptotic
// ratios, envelopes, and ridge picking against the moveout ellipse.

namespace logdmo {

/// An operator phase written as Phi = -k * space_shift + omega * time_shift,
/// with space_shift = x0 - x_n (midpoint move) and time_shift = tau0 - tau_n
/// (log-time move). Reading the phase as pure time shift makes every
/// operator look like a delay (time level >= 0 everywhere); the split shows
/// the phase of the wide-dip operators is carried by the space term.
struct PhaseDecomposition {
    double space_shift = 0.0;  // x0 - x_n, m
    double time_shift = 0.0;   // tau0 - tau_n, dimensionless
    double space_phase = 0.0;  // -k * space_shift
    double time_phase = 0.0;   // omega * time_shift
    double total = 0.0;        // space_phase + time_phase, the operator phase
};

/// Attribution per operator:
///   BaleFull    all time: tau shift -(1/2) ln(1 - xi^2)
///   Notfors     all space: midpoint shift (h/xi)(1 - sqrt(1 + xi^2))
///   Liner/Zhou  stationary-point split (y_s, delta_s)
/// Requires finite omega != 0 and h >= 0; BaleFull near |xi| = 1 throws
/// std::domain_error. xi == 0 is the zero-shift limit for every kind.
[[nodiscard]] inline PhaseDecomposition decompose(OperatorKind kind,
                                                  double omega, double k,
                                                  double h) {
    if (omega == 0.0 || !std::isfinite(omega) || !std::isfinite(k) ||
        !std::isfinite(h) || h < 0.0) {
        throw std::invalid_argument(
            "decompose: requires finite omega != 0 and h >= 0");
    }
    const double xi = h * k / omega;
    PhaseDecomposition d;
    switch (kind) {
        case OperatorKind::BaleFull: {
            if (std::fabs(xi) >= 1.0 - kBaleSingularGuard)
                throw std::domain_error("decompose: BaleFull singular at |xi| >= 1");
            d.time_shift = -0.5 * std::log1p(-xi * xi);
            break;
        }
        case OperatorKind::Notfors: {
            // (h/xi)(1 - sqrt(1 + xi^2)) = -h xi / (1 + sqrt(1 + xi^2)),
            // an ordinary point at xi = 0.
            d.space_shift = -h * xi / (1.0 + std::sqrt(1.0 + xi * xi));
            break;
        }
        case OperatorKind::LinerExact:
        case OperatorKind::ZhouExact: {
            if (xi != 0.0 && h > 0.0) {
                const LinerComponents c = liner_components(omega, k, h);
                d.space_shift = c.y_s;
                d.time_shift = c.delta_s;
            }
            break;
        }
    }
    d.space_phase = -k * d.space_shift;
    d.time_phase = omega * d.time_shift;
    d.total = d.space_phase + d.time_phase;
    return d;
}

/// One operator evaluated at one xi, with the two regime ratios:
/// small_ratio = Phi / ((omega/2) xi^2) (every operator -> 1 as xi -> 0) and
/// large_ratio = Phi / (omega xi) (the wide-dip operators -> 1 as
/// xi -> inf). Fields are NaN where the operator is singular.
struct AsymptoticEntry {
    OperatorKind op = OperatorKind::ZhouExact;
    double phase = 0.0;
    double small_ratio = 0.0;
    double large_ratio = 0.0;
};

struct AsymptoticReport {
    double omega = 0.0;
    std::vector<double> xi;
    std::vector<double> correction;  // ln(xi)/(2 xi), the wide-dip remainder scale
    std::vector<std::vector<AsymptoticEntry>> rows;  // rows[i][op_index]
};

[[nodiscard]] inline AsymptoticReport asymptotic_report(
    std::span<const OperatorKind> ops, std::span<const double> xis,
    double omega = 1.0) {
    if (omega == 0.0 || !std::isfinite(omega))
        throw std::invalid_argument("asymptotic_report: omega must be finite, nonzero");
    AsymptoticReport rep;
    rep.omega = omega;
    rep.xi.assign(xis.begin(), xis.end());
    rep.rows.resize(xis.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < xis.size(); ++i) {
        const double xi = xis[i];
        if (!(xi > 0.0))
            throw std::invalid_argument("asymptotic_report: xi must be positive");
        rep.correction.push_back(std::log(xi) / (2.0 * xi));
        for (const OperatorKind op : ops) {
            AsymptoticEntry e;
            e.op = op;
            const PhaseResult r = evaluate(op, {omega, xi * omega, 1.0});
            if (r.validity != Validity::Valid) {
                e.phase = e.small_ratio = e.large_ratio = nan;
            } else {
                e.phase = r.phase;
                e.small_ratio = r.phase / (0.5 * omega * xi * xi);
                e.large_ratio = r.phase / (omega * xi);
            }
            rep.rows[i].push_back(e);
        }
    }
    return rep;
}

/// Quadrature FIR half width; 2 * kHilbertHalfWidth + 1 taps.
inline constexpr int kHilbertHalfWidth = 32;

/// Kaiser shape for the quadrature FIR. beta = 8 puts the stopband near
/// -60 dB, well under the ridge floor the picker applies.
inline constexpr double kHilbertBeta = 8.0;

namespace detail {

[[nodiscard]] inline const std::vector<double>& hilbert_taps() {
    static const std::vector<double> taps = [] {
        std::vector<double> t(2 * kHilbertHalfWidth + 1, 0.0);
        const double pi = 3.14159265358979323846;
        const double denom = bessel_i0(kHilbertBeta);
        for (int m = -kHilbertHalfWidth; m <= kHilbertHalfWidth; ++m) {
            if (m == 0 || m % 2 == 0) continue;
            const double r = double(m) / double(kHilbertHalfWidth + 1);
            const double w = bessel_i0(kHilbertBeta * std::sqrt(1.0 - r * r)) / denom;
            t[std::size_t(m + kHilbertHalfWidth)] = 2.0 / (pi * double(m)) * w;
        }
        return t;
    }();
    return taps;
}

}  // namespace detail

/// Instantaneous amplitude |x + i H{x}| with H the windowed quadrature FIR.
/// Edges see the trace as zero-extended.
[[nodiscard]] inline std::vector<double> envelope(std::span<const double> x) {
    const auto& taps = detail::hilbert_taps();
    std::vector<double> env(x.size());
    const long n = long(x.size());
    for (long i = 0; i < n; ++i) {
        double q = 0.0;
        for (int m = -kHilbertHalfWidth; m <= kHilbertHalfWidth; ++m) {
            const long j = i - m;
            if (j < 0 || j >= n) continue;
            q += taps[std::size_t(m + kHilbertHalfWidth)] * x[std::size_t(j)];
        }
        env[std::size_t(i)] = std::hypot(x[std::size_t(i)], q);
    }
    return env;
}

/// The moveout ellipse an impulse at (t_n, x_n) with half offset h should
/// map onto: t0(x) = t_n sqrt(1 - ((x - x_n)/h)^2).
struct EllipseCurve {
    double t_n = 0.0;
    double x_n = 0.0;
    double h = 0.0;
};

struct RidgeSample {
    double x = 0.0;
    double t_pick = 0.0;            // envelope-argmax time, s
    double t_curve = 0.0;           // ellipse time, s
    double residual_samples = 0.0;  // (t_pick - t_curve) / dt
    double rel_amp = 0.0;           // trace envelope peak / window peak
    bool valid = false;             // above the pick floor
};

struct RidgeMetrics {
    std::vector<RidgeSample> rows;
    double max_abs_residual = 0.0;   // samples, over valid rows
    double mean_abs_residual = 0.0;  // samples, over valid rows
    std::size_t n_valid = 0;
    std::size_t n_missing = 0;
    double floor_rel = 0.0;
};

/// Pick the response ridge and measure it against the ellipse. Traces with
/// |x - x_n| <= window_frac * h take part; a trace whose envelope peak
/// falls below floor_rel of the strongest peak in the window is reported
/// missing rather than picked (its residual would be noise).
[[nodiscard]] inline RidgeMetrics ridge_metrics(const Section& s,
                                                const EllipseCurve& curve,
                                                double window_frac = 0.8,
                                                double floor_rel = 1e-2) {
    validate_section(s);
    if (!(curve.h > 0.0))
        throw std::invalid_argument("ridge_metrics: curve needs h > 0");
    if (!(curve.t_n > 0.0))
        throw std::invalid_argument("ridge_metrics: curve needs t_n > 0");
    if (!(window_frac > 0.0) || window_frac > 1.0)
        throw std::invalid_argument("ridge_metrics: window_frac in (0, 1]");

    struct Pick {
        std::size_t ix;
        std::size_t it;
        double peak;
    };
    std::vector<Pick> picks;
    double window_peak = 0.0;
    for (std::size_t ix = 0; ix < s.n_x; ++ix) {
        const double x = s.x_start + s.dx * double(ix);
        if (std::fabs(x - curve.x_n) > window_frac * curve.h) continue;
        const std::vector<double> env = envelope(s.trace_view(ix));
        std::size_t best = 0;
        for (std::size_t it = 1; it < env.size(); ++it) {
            if (env[it] > env[best]) best = it;
        }
        picks.push_back({ix, best, env[best]});
        if (env[best] > window_peak) window_peak = env[best];
    }

    RidgeMetrics m;
    m.floor_rel = floor_rel;
    double sum_abs = 0.0;
    for (const Pick& p : picks) {
        RidgeSample row;
        row.x = s.x_start + s.dx * double(p.ix);
        row.t_pick = s.t_start + s.dt * double(p.it);
        const double r = (row.x - curve.x_n) / curve.h;
        row.t_curve = curve.t_n * std::sqrt(1.0 - r * r);
        row.residual_samples = (row.t_pick - row.t_curve) / s.dt;
        row.rel_amp = window_peak > 0.0 ? p.peak / window_peak : 0.0;
        row.valid = window_peak > 0.0 && p.peak >= floor_rel * window_peak;
        if (row.valid) {
            ++m.n_valid;
            sum_abs += std::fabs(row.residual_samples);
            if (std::fabs(row.residual_samples) > m.max_abs_residual)
                m.max_abs_residual = std::fabs(row.residual_samples);
        } else {
            ++m.n_missing;
        }
        m.rows.push_back(row);
    }
    m.mean_abs_residual = m.n_valid ? sum_abs / double(m.n_valid) : 0.0;
    return m;
}

}  // namespace logdmo
