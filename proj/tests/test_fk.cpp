#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>
#include <random>

#include "logdmo/fk.hpp"

using namespace logdmo;

namespace {

Section random_section(std::size_t n_t, std::size_t n_x, unsigned seed,
                       double h = 500.0) {
    Section s = make_section(n_t, n_x, 0.004, 12.5, 0.004, -400.0, h);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : s.data) v = u(rng);
    return s;
}

double spectrum_energy(const Spectrum& sp) {
    double e = 0.0;
    for (const auto& b : sp.bins) e += std::norm(b);
    return e;
}

}  // namespace

TEST_CASE("forward then inverse reproduces the section", "[fk]") {
    const Section s = random_section(64, 32, 11);
    const Spectrum sp = forward_fk(s, 16, 8);
    double ratio = -1.0;
    const Section back = inverse_fk(sp, 1e-10, 0, &ratio);
    REQUIRE(ratio <= 1e-12);
    REQUIRE(back.n_t == s.n_t);
    REQUIRE(back.n_x == s.n_x);
    double max_abs = 0.0;
    for (std::size_t i = 0; i < s.data.size(); ++i) {
        max_abs = std::max(max_abs, std::fabs(back.data[i] - s.data[i]));
    }
    REQUIRE(max_abs <= 1e-10);
}

TEST_CASE("padded axes round up to powers of two and record geometry", "[fk]") {
    const Section s = random_section(60, 20, 3);
    const Spectrum sp = forward_fk(s, 30, 12);
    REQUIRE(sp.n_omega == 128);  // next_pow2(60 + 30)
    REQUIRE(sp.n_k == 32);       // next_pow2(20 + 12)
    REQUIRE(sp.n_tau_orig == 60);
    REQUIRE(sp.n_x_orig == 20);
    REQUIRE(sp.dtau == s.dt);
    REQUIRE(sp.dx == s.dx);
    REQUIRE(sp.d_omega ==
            Catch::Approx(2.0 * 3.14159265358979323846 / (128.0 * s.dt)));
    REQUIRE(sp.d_k ==
            Catch::Approx(2.0 * 3.14159265358979323846 / (32.0 * s.dx)));
}

TEST_CASE("transform satisfies Parseval with the padded size", "[fk]") {
    const Section s = random_section(32, 16, 5);
    const Spectrum sp = forward_fk(s, 0, 0);
    double in = 0.0;
    for (double v : s.data) in += v * v;
    REQUIRE(spectrum_energy(sp) ==
            Catch::Approx(double(sp.n_omega * sp.n_k) * in).epsilon(1e-12));
}

TEST_CASE("filtered spectra keep conjugate symmetry", "[fk]") {
    const Section s = random_section(32, 16, 7);
    for (auto kind : {OperatorKind::BaleFull, OperatorKind::Notfors,
                      OperatorKind::LinerExact, OperatorKind::ZhouExact}) {
        const Spectrum f = apply_phase_filter(forward_fk(s, 8, 4), kind);
        const std::size_t n = f.n_omega, m = f.n_k;
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t mm = 0; mm < m; ++mm) {
                const auto mirror = f.at((n - j) % n, (m - mm) % m);
                REQUIRE(std::abs(mirror - std::conj(f.at(j, mm))) <=
                        1e-9 * (1.0 + std::abs(f.at(j, mm))));
            }
        }
        // and the inverse stays numerically real
        double ratio = -1.0;
        (void)inverse_fk(f, 1e-10, 0, &ratio);
        REQUIRE(ratio <= 1e-12);
    }
}

TEST_CASE("a section constant across midpoint passes through unchanged", "[fk]") {
    // k = 0 for all its energy, and every operator is the identity at zero dip.
    Section s = make_section(64, 16, 0.004, 12.5, 0.004, 0.0, 500.0);
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t it = 0; it < s.n_t; ++it) {
        const double v = u(rng);
        for (std::size_t ix = 0; ix < s.n_x; ++ix) s.at(it, ix) = v;
    }
    for (auto kind : {OperatorKind::BaleFull, OperatorKind::Notfors,
                      OperatorKind::LinerExact, OperatorKind::ZhouExact}) {
        const Section out =
            inverse_fk(apply_phase_filter(forward_fk(s, 0, 0), kind));
        for (std::size_t i = 0; i < s.data.size(); ++i) {
            REQUIRE(std::fabs(out.data[i] - s.data[i]) <= 1e-10);
        }
    }
}

TEST_CASE("singular bins are zeroed or held per policy", "[fk]") {
    // Large h pushes |xi| >= 1 into most nonzero-k bins for the full-log
    // operator; account for the energy the Zero policy removes.
    const Section s = random_section(32, 32, 23, 5000.0);
    const Spectrum sp = forward_fk(s, 0, 0);
    const std::size_t n = sp.n_omega, m = sp.n_k;

    double singular_energy = 0.0;
    for (std::size_t j = 1; j < n / 2; ++j) {
        for (std::size_t mm = 0; mm < m; ++mm) {
            const double k = (mm <= m / 2) ? sp.d_k * double(mm)
                                           : sp.d_k * (double(mm) - double(m));
            const auto r =
                evaluate(OperatorKind::BaleFull, {sp.d_omega * double(j), k, sp.h});
            if (r.validity == Validity::Singular) {
                singular_energy += std::norm(sp.at(j, mm));
                singular_energy += std::norm(sp.at(n - j, (m - mm) % m));
            }
        }
    }
    REQUIRE(singular_energy > 0.0);

    const Spectrum zeroed =
        apply_phase_filter(sp, OperatorKind::BaleFull, SingularPolicy::Zero);
    REQUIRE(spectrum_energy(zeroed) ==
            Catch::Approx(spectrum_energy(sp) - singular_energy).epsilon(1e-10));

    const Spectrum held = apply_phase_filter(sp, OperatorKind::BaleFull,
                                             SingularPolicy::HoldMagnitudeZeroPhase);
    REQUIRE(spectrum_energy(held) ==
            Catch::Approx(spectrum_energy(sp)).epsilon(1e-12));
}

TEST_CASE("unit-amplitude filters preserve energy", "[fk]") {
    const Section s = random_section(32, 16, 29);
    const Spectrum sp = forward_fk(s, 8, 4);
    for (auto kind : {OperatorKind::Notfors, OperatorKind::ZhouExact}) {
        const Spectrum f = apply_phase_filter(sp, kind);
        REQUIRE(spectrum_energy(f) ==
                Catch::Approx(spectrum_energy(sp)).epsilon(1e-12));
    }
}

TEST_CASE("broken symmetry trips the imaginary-residual check", "[fk]") {
    const Section s = random_section(32, 16, 31);
    Spectrum sp = forward_fk(s, 0, 0);
    sp.at(3, 5) += std::complex<double>(0.0, 50.0);
    REQUIRE_THROWS_AS(inverse_fk(sp), std::runtime_error);
}

TEST_CASE("transforms are independent of the thread count", "[fk]") {
    const Section s = random_section(64, 32, 37);
    const Spectrum a = forward_fk(s, 16, 8, 1);
    const Spectrum b = forward_fk(s, 16, 8, 3);
    REQUIRE(a.bins.size() == b.bins.size());
    for (std::size_t i = 0; i < a.bins.size(); ++i) {
        REQUIRE(a.bins[i].real() == b.bins[i].real());
        REQUIRE(a.bins[i].imag() == b.bins[i].imag());
    }
    const Spectrum fa = apply_phase_filter(a, OperatorKind::ZhouExact,
                                           SingularPolicy::Zero, 1);
    const Spectrum fb = apply_phase_filter(b, OperatorKind::ZhouExact,
                                           SingularPolicy::Zero, 4);
    for (std::size_t i = 0; i < fa.bins.size(); ++i) {
        REQUIRE(fa.bins[i].real() == fb.bins[i].real());
        REQUIRE(fa.bins[i].imag() == fb.bins[i].imag());
    }
}

TEST_CASE("forward_fk rejects malformed sections", "[fk]") {
    Section s = make_section(1, 4, 0.004, 12.5, 0.004, 0.0, 0.0);
    REQUIRE_THROWS_AS(forward_fk(s, 0, 0), std::invalid_argument);
    s = make_section(16, 4, 0.004, 12.5, 0.004, 0.0, 0.0);
    s.dt = 0.0;
    REQUIRE_THROWS_AS(forward_fk(s, 0, 0), std::invalid_argument);
    s = make_section(16, 4, 0.004, 12.5, 0.004, 0.0, 0.0);
    s.data.resize(10);
    REQUIRE_THROWS_AS(forward_fk(s, 0, 0), std::invalid_argument);
}
