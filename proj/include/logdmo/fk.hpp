#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fft.hpp"
#include "grid.hpp"
#include "kernel.hpp"
#include "parallel.hpp"
#include "stretch.hpp"

// 2-D spectra of stretched sections and the phase filter that applies a
// moveout operator in that domain.
//
// Transform kernel: forward uses e^{+i omega tau} on the time axis and
// e^{-i k x} on the midpoint axis, unnormalized; the inverse flips both
// signs and divides by the padded grid size. With that pairing a filter
// multiplier amp * e^{+i Phi(omega, k)} shifts events by exactly the
// stationary-phase geometry of Phi.
//
// Real input makes S(-omega, -k) = conj(S(omega, k)). The filter preserves
// that by evaluating multipliers on the omega >= 0 half-grid only and
// applying the conjugate to the mirrored bin, so the filtered section stays
// real to rounding.

namespace logdmo {

/// What the filter writes into bins where the operator is Singular
/// (BaleFull at |xi| -> 1).
enum class SingularPolicy {
    Zero,                     // discard the bin
    HoldMagnitudeZeroPhase,   // keep the bin, apply no phase
};

struct Spectrum {
    std::vector<std::complex<double>> bins;  // row-major [n_omega][n_k]
    std::size_t n_omega = 0;  // padded, power of two
    std::size_t n_k = 0;      // padded, power of two
    double d_omega = 0.0;     // rad per unit tau
    double d_k = 0.0;         // rad/m
    double h = 0.0;

    // Geometry of the unpadded section, kept for the crop after inversion.
    std::size_t n_tau_orig = 0;
    std::size_t n_x_orig = 0;
    double dtau = 0.0;
    double dx = 0.0;
    double tau_start = 0.0;
    double x_start = 0.0;

    [[nodiscard]] std::complex<double>& at(std::size_t j, std::size_t m) {
        return bins[j * n_k + m];
    }
    [[nodiscard]] std::complex<double> at(std::size_t j, std::size_t m) const {
        return bins[j * n_k + m];
    }
};

namespace detail {

inline void fft_columns(std::vector<std::complex<double>>& work,
                        std::size_t n_rows, std::size_t n_cols,
                        const FftPlan& plan, unsigned threads) {
    parallel_for(n_cols, threads, [&](std::size_t m) {
        std::vector<std::complex<double>> col(n_rows);
        for (std::size_t j = 0; j < n_rows; ++j) col[j] = work[j * n_cols + m];
        fft_apply(plan, col.data());
        for (std::size_t j = 0; j < n_rows; ++j) work[j * n_cols + m] = col[j];
    });
}

inline void fft_rows(std::vector<std::complex<double>>& work,
                     std::size_t n_rows, std::size_t n_cols,
                     const FftPlan& plan, unsigned threads) {
    parallel_for(n_rows, threads, [&](std::size_t j) {
        fft_apply(plan, work.data() + j * n_cols);
    });
}

}  // namespace detail

/// Transform a section (time axis may be any uniform axis; the pipeline
/// passes log-stretched time). The grid is zero-padded by at least pad_t and
/// pad_x samples and then rounded up to powers of two.
[[nodiscard]] inline Spectrum forward_fk(const Section& s, std::size_t pad_t,
                                         std::size_t pad_x,
                                         unsigned threads = 0) {
    if (s.n_t < 2 || s.n_x < 1)
        throw std::invalid_argument("forward_fk: grid too small");
    if (!(s.dt > 0.0) || !(s.dx > 0.0))
        throw std::invalid_argument("forward_fk: steps must be positive");
    if (s.data.size() != s.n_t * s.n_x)
        throw std::invalid_argument("forward_fk: data size mismatch");

    const std::size_t n = next_pow2(s.n_t + pad_t);
    const std::size_t m = next_pow2(s.n_x + pad_x);

    Spectrum sp;
    sp.n_omega = n;
    sp.n_k = m;
    sp.d_omega = 2.0 * 3.14159265358979323846 / (double(n) * s.dt);
    sp.d_k = 2.0 * 3.14159265358979323846 / (double(m) * s.dx);
    sp.h = s.h;
    sp.n_tau_orig = s.n_t;
    sp.n_x_orig = s.n_x;
    sp.dtau = s.dt;
    sp.dx = s.dx;
    sp.tau_start = s.t_start;
    sp.x_start = s.x_start;
    sp.bins.assign(n * m, {0.0, 0.0});
    for (std::size_t ix = 0; ix < s.n_x; ++ix) {
        for (std::size_t it = 0; it < s.n_t; ++it) {
            sp.bins[it * m + ix] = s.at(it, ix);
        }
    }

    const FftPlan plan_t(n, +1);
    const FftPlan plan_x(m, -1);
    detail::fft_columns(sp.bins, n, m, plan_t, threads);
    detail::fft_rows(sp.bins, n, m, plan_x, threads);
    return sp;
}

/// Multiply the spectrum by the operator's amp * e^{+i Phi}, evaluated on
/// the omega >= 0 rows and mirrored by conjugation. The DC row is the
/// identity by construction (every operator is the identity at omega == 0).
/// The Nyquist time row is also left as is: it is its own mirror, so no
/// nonzero phase there is conjugate-consistent; padding keeps signal
/// content below it.
[[nodiscard]] inline Spectrum apply_phase_filter(
    const Spectrum& in, OperatorKind kind,
    SingularPolicy policy = SingularPolicy::Zero, unsigned threads = 0) {
    Spectrum out = in;
    const std::size_t n = out.n_omega;
    const std::size_t m = out.n_k;
    const std::size_t half_n = n / 2;
    const std::size_t half_m = m / 2;

    parallel_for(half_n, threads, [&](std::size_t idx) {
        const std::size_t j = idx + 1;  // rows 1 .. n/2-1; DC and Nyquist skipped
        if (j >= half_n) return;
        const double omega = out.d_omega * double(j);
        for (std::size_t mm = 0; mm < m; ++mm) {
            const double k = (mm <= half_m) ? out.d_k * double(mm)
                                            : out.d_k * (double(mm) - double(m));
            const PhaseResult r = evaluate(kind, {omega, k, out.h});
            std::complex<double> mult;
            switch (r.validity) {
                case Validity::Valid:
                    mult = std::polar(r.amplitude, r.phase);
                    break;
                case Validity::Singular:
                    mult = (policy == SingularPolicy::Zero)
                               ? std::complex<double>(0.0, 0.0)
                               : std::complex<double>(r.amplitude, 0.0);
                    break;
                case Validity::OutOfDomain:
                    mult = {1.0, 0.0};
                    break;
            }
            out.at(j, mm) *= mult;
            out.at(n - j, (m - mm) % m) *= std::conj(mult);
        }
    });
    return out;
}

/// Invert the spectrum and crop back to the original grid. The imaginary
/// residual of the inverse, ||imag|| / ||real|| over the cropped grid, is a
/// direct measure of broken conjugate symmetry; it is reported through
/// imag_ratio_out when given and trips std::runtime_error above tol.
[[nodiscard]] inline Section inverse_fk(const Spectrum& sp,
                                        double tol = 1e-10,
                                        unsigned threads = 0,
                                        double* imag_ratio_out = nullptr) {
    if (sp.n_omega < 2 || sp.n_k < 1 || sp.bins.size() != sp.n_omega * sp.n_k)
        throw std::invalid_argument("inverse_fk: malformed spectrum");
    if (sp.n_tau_orig > sp.n_omega || sp.n_x_orig > sp.n_k)
        throw std::invalid_argument("inverse_fk: crop exceeds grid");

    const std::size_t n = sp.n_omega;
    const std::size_t m = sp.n_k;
    std::vector<std::complex<double>> work = sp.bins;
    const FftPlan plan_x(m, +1);
    const FftPlan plan_t(n, -1);
    detail::fft_rows(work, n, m, plan_x, threads);
    detail::fft_columns(work, n, m, plan_t, threads);

    Section s = make_section(sp.n_tau_orig, sp.n_x_orig, sp.dtau, sp.dx,
                             sp.tau_start, sp.x_start, sp.h);
    const double scale = 1.0 / (double(n) * double(m));
    double real2 = 0.0;
    double imag2 = 0.0;
    for (std::size_t ix = 0; ix < s.n_x; ++ix) {
        for (std::size_t it = 0; it < s.n_t; ++it) {
            const std::complex<double> v = work[it * m + ix] * scale;
            s.at(it, ix) = v.real();
            real2 += v.real() * v.real();
            imag2 += v.imag() * v.imag();
        }
    }
    const double ratio = (imag2 == 0.0) ? 0.0
                                        : std::sqrt(imag2) /
                                              std::sqrt(real2 > 0.0 ? real2
                                                                    : imag2);
    if (imag_ratio_out) *imag_ratio_out = ratio;
    if (ratio > tol) {
        throw std::runtime_error(
            "inverse_fk: imaginary residual exceeds tolerance");
    }
    return s;
}

}  // namespace logdmo
