#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

// Iterative radix-2 complex FFT, unnormalized. sign = -1 puts e^{-i...}
// in the kernel, sign = +1 puts e^{+i...}; a sign pass followed by the
// opposite sign pass returns the input times n. Grids here are padded to
// powers of two before transforming, so radix-2 is all that is needed.

namespace logdmo {

/// Twiddle table for one transform length, built once and shared across the
/// rows of a 2-D transform. Direct evaluation per index (no running
/// products) keeps the table accurate to a few ulp at any length.
struct FftPlan {
    std::size_t n = 0;
    int sign = -1;
    std::vector<std::complex<double>> tw;  // tw[j] = exp(sign * 2 pi i j / n)

    FftPlan() = default;
    FftPlan(std::size_t n_, int sign_) : n(n_), sign(sign_) {
        if (n == 0 || (n & (n - 1)) != 0)
            throw std::invalid_argument("FftPlan: length must be a power of two");
        if (sign != 1 && sign != -1)
            throw std::invalid_argument("FftPlan: sign must be +1 or -1");
        const double step = double(sign) * 2.0 * 3.14159265358979323846 / double(n);
        tw.resize(n / 2);
        for (std::size_t j = 0; j < n / 2; ++j) {
            tw[j] = std::polar(1.0, step * double(j));
        }
    }
};

/// In-place transform of one row of plan.n values.
inline void fft_apply(const FftPlan& plan, std::complex<double>* a) {
    const std::size_t n = plan.n;
    if (n <= 1) return;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const std::complex<double> w = plan.tw[j * step];
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + half] * w;
                a[i + j] = u + v;
                a[i + j + half] = u - v;
            }
        }
    }
}

}  // namespace logdmo
