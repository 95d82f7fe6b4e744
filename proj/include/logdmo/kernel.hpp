#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

// Frequency-wavenumber phase operators for constant-velocity, common-offset
// dip moveout applied in log-stretched time.
//
// Conventions used throughout:
//   omega  angular frequency conjugate to stretched time tau = ln(t / t_c),
//          in radians per unit tau (tau is dimensionless)
//   k      angular wavenumber conjugate to midpoint x, in rad/m
//   h      half source-receiver offset, in m
//   xi     dimensionless dip parameter h * k / omega
//
// All operators reduce to the identity (zero phase, unit amplitude) at
// omega == 0 and agree to O(xi^2) for small xi; they differ at steep dip.

namespace logdmo {

/// One point of the transform domain paired with the section's half offset.
struct FkPoint {
    double omega = 0.0;
    double k = 0.0;
    double h = 0.0;

    /// Dip parameter h*k/omega; disengaged when omega == 0, where every
    /// operator is the identity and xi is meaningless.
    [[nodiscard]] std::optional<double> xi() const noexcept {
        if (omega == 0.0) return std::nullopt;
        return h * k / omega;
    }
};

enum class OperatorKind {
    BaleFull,    // -(omega/2) ln(1 - xi^2), real only for |xi| < 1
    Notfors,     // omega (sqrt(1 + xi^2) - 1)
    LinerExact,  // stationary-point components assembling to ZhouExact
    ZhouExact,   // (omega/2) [s - 1 - ln((s+1)/2)], s = sqrt(1 + 4 xi^2)
};

enum class Validity {
    Valid,
    Singular,     // BaleFull at |xi| >= 1 - kBaleSingularGuard
    OutOfDomain,  // non-finite xi or malformed point (h < 0, non-finite input)
};

struct PhaseResult {
    double phase = 0.0;      // radians, meaningful only when Valid
    double amplitude = 1.0;  // real gain, meaningful only when Valid
    Validity validity = Validity::Valid;
};

/// BaleFull blows up as |xi| -> 1; points this close to the branch point are
/// reported Singular instead of returning a huge finite phase.
inline constexpr double kBaleSingularGuard = 1e-9;

/// Full-log phase -(omega/2) ln(1 - xi^2), written with log1p so the
/// small-xi limit (omega/2) xi^2 comes out without cancellation.
/// Precondition: |xi| < 1.
[[nodiscard]] inline double phase_bale(double omega, double xi) noexcept {
    return -0.5 * omega * std::log1p(-xi * xi);
}

/// Square-root phase omega (sqrt(1 + xi^2) - 1), evaluated as
/// omega xi^2 / (1 + sqrt(1 + xi^2)) to avoid the subtraction near xi = 0.
[[nodiscard]] inline double phase_notfors(double omega, double xi) noexcept {
    const double xi2 = xi * xi;
    return omega * xi2 / (1.0 + std::sqrt(1.0 + xi2));
}

/// Exact log-domain phase (omega/2) [s - 1 - ln((s+1)/2)] with
/// s = sqrt(1 + 4 xi^2). Both differences are formed cancellation-free:
/// s - 1 = 4 xi^2 / (1 + s) and ln((s+1)/2) = log1p((s-1)/2).
[[nodiscard]] inline double phase_exact(double omega, double xi) noexcept {
    const double s = std::sqrt(1.0 + 4.0 * xi * xi);
    const double sm1 = 4.0 * xi * xi / (1.0 + s);
    return 0.5 * omega * (sm1 - std::log1p(0.5 * sm1));
}

/// Stationary-point geometry of the exact operator: the midpoint shift y_s,
/// its offset-normalized form beta_s, the log-time shift delta_s, and the
/// spreading amplitude. The assembled phase omega*delta_s - k*y_s equals
/// phase_exact because 1 - beta_s^2 collapses to 2/(1 + s).
struct LinerComponents {
    double y_s = 0.0;      // midpoint shift, m
    double beta_s = 0.0;   // y_s / h
    double delta_s = 0.0;  // log-time shift (1/2) ln(1 - beta_s^2)
    double amplitude = 1.0;
};

/// Components for omega != 0, h > 0. Throws std::invalid_argument otherwise.
/// y_s = (h/(2 xi)) (1 - sqrt(1 + 4 xi^2)) is evaluated as -2 h xi / (1 + s)
/// so xi = 0 is an ordinary point (everything shifts by zero).
[[nodiscard]] inline LinerComponents liner_components(double omega, double k,
                                                      double h) {
    if (omega == 0.0 || !(h > 0.0) || !std::isfinite(omega) ||
        !std::isfinite(k) || !std::isfinite(h)) {
        throw std::invalid_argument(
            "liner_components: requires finite omega != 0 and h > 0");
    }
    const double xi = h * k / omega;
    const double s = std::sqrt(1.0 + 4.0 * xi * xi);
    LinerComponents c;
    c.y_s = -2.0 * h * xi / (1.0 + s);
    c.beta_s = -2.0 * xi / (1.0 + s);
    c.delta_s = 0.5 * std::log1p(-c.beta_s * c.beta_s);
    c.amplitude = 1.0 / std::sqrt(1.0 + c.beta_s * c.beta_s);
    return c;
}

/// Evaluate one operator at one transform-domain point.
/// omega == 0 is the identity for every kind; BaleFull near |xi| = 1 is
/// Singular; non-finite or malformed points are OutOfDomain.
[[nodiscard]] inline PhaseResult evaluate(OperatorKind kind,
                                          const FkPoint& p) noexcept {
    if (!std::isfinite(p.omega) || !std::isfinite(p.k) ||
        !std::isfinite(p.h) || p.h < 0.0) {
        return {0.0, 1.0, Validity::OutOfDomain};
    }
    const auto xi_opt = p.xi();
    if (!xi_opt) return {0.0, 1.0, Validity::Valid};
    const double xi = *xi_opt;
    if (!std::isfinite(xi)) return {0.0, 1.0, Validity::OutOfDomain};

    switch (kind) {
        case OperatorKind::BaleFull:
            if (std::fabs(xi) >= 1.0 - kBaleSingularGuard) {
                return {0.0, 1.0, Validity::Singular};
            }
            return {phase_bale(p.omega, xi), 1.0, Validity::Valid};
        case OperatorKind::Notfors:
            return {phase_notfors(p.omega, xi), 1.0, Validity::Valid};
        case OperatorKind::LinerExact: {
            if (xi == 0.0 || p.h == 0.0) return {0.0, 1.0, Validity::Valid};
            const auto c = liner_components(p.omega, p.k, p.h);
            return {p.omega * c.delta_s - p.k * c.y_s, c.amplitude,
                    Validity::Valid};
        }
        case OperatorKind::ZhouExact:
            return {phase_exact(p.omega, xi), 1.0, Validity::Valid};
    }
    return {0.0, 1.0, Validity::OutOfDomain};
}

}  // namespace logdmo
