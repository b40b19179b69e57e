#pragma once

// Figures of merit: postselected and unselected SNR, their ratio chi, the
// rescaled chi', the postselected Fisher information and the Cramer-Rao bound.
//
// Signals are mean shifts (final mean minus initial pointer mean) and noises
// are the final-state standard deviations, both from the number-basis oracle.

#include <cmath>
#include <limits>

#include "weaklab/core.hpp"
#include "weaklab/fock_oracle.hpp"
#include "weaklab/pointers.hpp"
#include "weaklab/selection.hpp"

namespace weaklab {

/// Offset of chi' = (chi - 1.4618) * 1e5. This is the coherent-pointer
/// plateau of chi at theta = 7pi/9, phi = pi/4, s = 1e-5 and has no meaning
/// at other selections.
inline constexpr double kChiPlateau = 1.4618;
inline constexpr double kChiPrimeScale = 1e5;

/// Signals with |sin(theta) cos(phi)| below this are treated as zero.
inline constexpr double kZeroSignalTolerance = 1e-12;

struct SnrReport {
    double snr_post = 0.0;
    double snr_non = 0.0;
    double chi = std::numeric_limits<double>::quiet_NaN();
    double chi_prime = std::numeric_limits<double>::quiet_NaN();
    double p_s = 0.0;
    double signal_post = 0.0;
    double signal_non = 0.0;
    double noise_post = 0.0;
    double noise_non = 0.0;
    bool zero_signal = false;

    bool chi_defined() const { return snr_non > 0.0; }
};

/// SNR report evaluated on an already-truncated pointer vector.
inline SnrReport snr_report(const fock::FockVector& pointer_vec, const SelectionPair& sel,
                            const CouplingConfig& cfg) {
    const double sigma = cfg.sigma();
    const double s = cfg.s();
    const auto initial = fock::moments(pointer_vec, sigma);
    const auto post = fock::moments(fock::evolve_and_postselect(pointer_vec, sel, s).postselected_state, sigma);
    const auto non = fock::nonpostselected_moments(pointer_vec, sel, s, sigma);

    const double floor = 1e-18 * sigma * sigma;
    if (post.var_x() < floor || non.var_x() < floor)
        fail(ErrorCode::DegenerateNoise, "final position variance below 1e-18 sigma^2");

    SnrReport r;
    const double n = static_cast<double>(cfg.n_runs());
    r.p_s = postselection_probability(sel);
    r.signal_post = post.mean_x - initial.mean_x;
    r.signal_non = non.mean_x - initial.mean_x;
    r.noise_post = std::sqrt(post.var_x());
    r.noise_non = std::sqrt(non.var_x());
    r.snr_post = std::sqrt(n * r.p_s) * std::abs(r.signal_post) / r.noise_post;

    r.zero_signal = std::abs(std::sin(sel.theta()) * std::cos(sel.phi())) < kZeroSignalTolerance;
    r.snr_non = r.zero_signal ? 0.0 : std::sqrt(n) * std::abs(r.signal_non) / r.noise_non;

    if (r.snr_non > 0.0) {
        // N cancels; evaluate without it so chi is bitwise independent of N.
        r.chi = std::sqrt(r.p_s) * (std::abs(r.signal_post) / r.noise_post) /
                (std::abs(r.signal_non) / r.noise_non);
        r.chi_prime = (r.chi - kChiPlateau) * kChiPrimeScale;
    }
    return r;
}

inline SnrReport snr_report(const SelectionPair& sel, const PointerSpec& pointer, const CouplingConfig& cfg) {
    return fock::with_truncation(pointer, cfg.s(),
                                 [&](const fock::FockVector& v) { return snr_report(v, sel, cfg); })
        .value;
}

inline double snr_postselected(const SelectionPair& sel, const PointerSpec& pointer, const CouplingConfig& cfg) {
    return snr_report(sel, pointer, cfg).snr_post;
}

/// Returns 0 when sin(theta) cos(phi) = 0 (no unselected mean shift).
inline double snr_nonpostselected(const SelectionPair& sel, const PointerSpec& pointer, const CouplingConfig& cfg) {
    return snr_report(sel, pointer, cfg).snr_non;
}

inline double chi_of(const SnrReport& r) {
    if (!r.chi_defined()) fail(ErrorCode::ChiUndefined, "unselected SNR is zero");
    return r.chi;
}

inline double ratio_chi(const SelectionPair& sel, const PointerSpec& pointer, const CouplingConfig& cfg) {
    return chi_of(snr_report(sel, pointer, cfg));
}

inline double ratio_chi_prime(const SelectionPair& sel, const PointerSpec& pointer, const CouplingConfig& cfg) {
    return (ratio_chi(sel, pointer, cfg) - kChiPlateau) * kChiPrimeScale;
}

/// F_p = P_s F.
inline double fisher_postselected(const fock::FockVector& pointer_vec, const SelectionPair& sel, double s,
                                  fock::Evolution evo = fock::Evolution::Full) {
    return postselection_probability(sel) * fock::qfi_postselected(pointer_vec, sel, s, evo);
}

inline double fisher_postselected(const SelectionPair& sel, const PointerSpec& pointer, const CouplingConfig& cfg,
                                  fock::Evolution evo = fock::Evolution::Full) {
    return fock::with_truncation(pointer, cfg.s(),
                                 [&](const fock::FockVector& v) {
                                     return fisher_postselected(v, sel, cfg.s(), evo);
                                 })
        .value;
}

/// 1/(N F). The usual statement bounds the variance, so the standard
/// deviation bound is 1/sqrt(N F); this returns the unsquare-rooted form.
inline double cramer_rao_bound(double fisher, long n_runs) {
    if (!(fisher > 0.0)) fail(ErrorCode::BoundUndefined, "Fisher information must be positive");
    if (n_runs < 1) fail(ErrorCode::InvalidArgument, "repetition count must be at least 1");
    return 1.0 / (static_cast<double>(n_runs) * fisher);
}

}  // namespace weaklab
