#pragma once

// Brute-force number-basis engine. Builds truncated pointer states, applies
// the exact two-branch evolution, postselects or traces out the measured
// system, and evaluates moments and the quantum Fisher information.
//
// Everything here is computed from first principles (ladder-operator
// actions and exponentials of the truncated generator), never from the
// closed forms in pointers.hpp, so it can serve as their oracle.
//
// Truncation: a state of dimension d is "converged" when the probability in
// its top guard band (the last max(16, d/4) levels) is at most 1e-12.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "weaklab/core.hpp"
#include "weaklab/pointers.hpp"
#include "weaklab/selection.hpp"

namespace weaklab::fock {

inline constexpr std::size_t kMinDim = 32;
inline constexpr std::size_t kDefaultMaxDim = 4096;
inline constexpr double kTailTolerance = 1e-12;

inline std::size_t guard_band(std::size_t dim) { return std::max<std::size_t>(16, dim / 4); }

/// Truncation ceiling; WEAKLAB_MAX_DIM overrides the default of 4096.
inline std::size_t max_dim() {
    if (const char* env = std::getenv("WEAKLAB_MAX_DIM")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end != env && *end == '\0' && v >= static_cast<long long>(kMinDim))
            return static_cast<std::size_t>(v);
    }
    return kDefaultMaxDim;
}

struct FockVector {
    std::vector<Complex> amps;
    double tail_mass = 0.0;

    std::size_t dim() const noexcept { return amps.size(); }
    bool converged() const noexcept { return tail_mass <= kTailTolerance; }

    double norm_sq() const noexcept {
        double acc = 0.0;
        for (const auto& a : amps) acc += std::norm(a);
        return acc;
    }
};

inline double band_mass(std::span<const Complex> amps) {
    const std::size_t d = amps.size();
    const std::size_t start = d > guard_band(d) ? d - guard_band(d) : 0;
    double acc = 0.0;
    for (std::size_t n = start; n < d; ++n) acc += std::norm(amps[n]);
    return acc;
}

inline FockVector make_vector(std::vector<Complex> amps) {
    FockVector v{std::move(amps), 0.0};
    v.tail_mass = band_mass(v.amps);
    return v;
}

inline void require_converged(const FockVector& v, const std::string& what) {
    if (!v.converged())
        fail(ErrorCode::TruncationInsufficient,
             what + ": tail mass " + std::to_string(v.tail_mass) + " at dim " + std::to_string(v.dim()));
}

inline void require_dim(std::size_t dim) {
    if (dim < kMinDim)
        fail(ErrorCode::InvalidArgument, "truncation dimension must be at least " + std::to_string(kMinDim));
}

struct MomentSet {
    double mean_x = 0.0;
    double mean_p = 0.0;
    double mean_x2 = 0.0;
    double mean_p2 = 0.0;
    double norm = 0.0;

    double var_x() const { return std::max(0.0, mean_x2 - mean_x * mean_x); }
    double var_p() const { return std::max(0.0, mean_p2 - mean_p * mean_p); }
};

struct JointOutcome {
    FockVector postselected_state;
    double postselection_prob_exact = 0.0;
    double p_plus = 0.0;
    double p_minus = 0.0;
};

// ---------------------------------------------------------------------------
// State construction

/// e^{-|alpha|^2/2} alpha^n / sqrt(n!) by upward recurrence.
inline std::vector<Complex> coherent_amplitudes(Complex alpha, std::size_t dim) {
    std::vector<Complex> amps(dim);
    amps[0] = std::exp(-0.5 * std::norm(alpha));
    for (std::size_t n = 1; n < dim; ++n) amps[n] = amps[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    return amps;
}

inline FockVector coherent_vector(Complex alpha, std::size_t dim) {
    require_dim(dim);
    auto v = make_vector(coherent_amplitudes(alpha, dim));
    require_converged(v, "coherent state");
    return v;
}

/// S(xi)|0>: amp[2n] = (-e^{i delta} tanh eta)^n sqrt((2n)!)/(2^n n!) / sqrt(cosh eta).
inline FockVector squeezed_vacuum_vector(Complex xi, std::size_t dim) {
    require_dim(dim);
    const double eta = std::abs(xi);
    const double delta = std::arg(xi);
    const Complex ratio = -std::polar(std::tanh(eta), delta);

    std::vector<Complex> amps(dim, Complex{0.0, 0.0});
    amps[0] = 1.0 / std::sqrt(std::cosh(eta));
    for (std::size_t n = 2; n < dim; n += 2) {
        const double k = static_cast<double>(n);
        amps[n] = amps[n - 2] * ratio * std::sqrt((k - 1.0) / k);
    }
    auto v = make_vector(std::move(amps));
    require_converged(v, "squeezed vacuum");
    return v;
}

/// K(|alpha> + |-alpha>); odd amplitudes are exactly zero.
inline FockVector even_cat_vector(Complex alpha, std::size_t dim) {
    require_dim(dim);
    const double k = 1.0 / std::sqrt(2.0 + 2.0 * std::exp(-2.0 * std::norm(alpha)));
    auto amps = coherent_amplitudes(alpha, dim);
    for (std::size_t n = 0; n < dim; ++n) amps[n] = (n % 2 == 0) ? 2.0 * k * amps[n] : Complex{0.0, 0.0};
    auto v = make_vector(std::move(amps));
    require_converged(v, "even cat");
    return v;
}

inline FockVector pointer_vector(const PointerSpec& pointer, std::size_t dim) {
    if (const auto* c = std::get_if<Coherent>(&pointer)) return coherent_vector(c->alpha(), dim);
    if (const auto* q = std::get_if<SqueezedVacuum>(&pointer)) return squeezed_vacuum_vector(q->xi(), dim);
    return even_cat_vector(std::get<EvenCat>(pointer).alpha(), dim);
}

// ---------------------------------------------------------------------------
// Ladder operators

/// (mu a^dag - mu^* a) v on a truncated basis of size v.size().
inline void apply_generator(Complex mu, std::span<const Complex> v, std::span<Complex> out) {
    const std::size_t d = v.size();
    const Complex mu_c = std::conj(mu);
    for (std::size_t n = 0; n < d; ++n) {
        Complex acc{0.0, 0.0};
        if (n > 0) acc += mu * std::sqrt(static_cast<double>(n)) * v[n - 1];
        if (n + 1 < d) acc -= mu_c * std::sqrt(static_cast<double>(n + 1)) * v[n + 1];
        out[n] = acc;
    }
}

/// (a^dag - a) v, the s-derivative generator of D(s/2) up to the factor 1/2.
inline std::vector<Complex> apply_momentum_generator(std::span<const Complex> v) {
    std::vector<Complex> out(v.size());
    apply_generator(Complex{1.0, 0.0}, v, out);
    return out;
}

inline Eigen::MatrixXcd lowering_matrix(std::size_t dim) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

inline Eigen::MatrixXcd position_matrix(std::size_t dim, double sigma) {
    const auto a = lowering_matrix(dim);
    return sigma * (a + a.adjoint());
}

inline Eigen::MatrixXcd momentum_matrix(std::size_t dim, double sigma) {
    const auto a = lowering_matrix(dim);
    return Complex{0.0, 1.0 / (2.0 * sigma)} * (a.adjoint() - a);
}

// ---------------------------------------------------------------------------
// Displacement

struct DisplacementMatrix {
    Eigen::MatrixXcd matrix;
    std::size_t certified_cols = 0;
    double unitarity_deviation = 0.0;  // max | ||column|| - 1 | over the certified columns
};

/// D(mu) = exp(mu a^dag - mu^* a) as a dense exponential on a padded basis
/// (dim + guard band), cropped to dim x dim. The leading certified_cols
/// columns must be unitary to 1e-8.
inline DisplacementMatrix displacement_matrix(Complex mu, std::size_t dim, std::size_t certified_cols = 0) {
    require_dim(dim);
    if (certified_cols == 0) certified_cols = dim / 2;
    certified_cols = std::min(certified_cols, dim);

    const std::size_t padded = dim + guard_band(dim);
    const auto a = lowering_matrix(padded);
    const Eigen::MatrixXcd gen = mu * a.adjoint() - std::conj(mu) * a;
    const Eigen::MatrixXcd full = gen.exp();

    DisplacementMatrix out{full.topLeftCorner(dim, dim), certified_cols, 0.0};
    for (std::size_t j = 0; j < certified_cols; ++j)
        out.unitarity_deviation =
            std::max(out.unitarity_deviation, std::abs(out.matrix.col(static_cast<Eigen::Index>(j)).norm() - 1.0));
    if (out.unitarity_deviation > 1e-8)
        fail(ErrorCode::TruncationInsufficient,
             "displacement block not unitary (deviation " + std::to_string(out.unitarity_deviation) + ")");
    return out;
}

/// exp(mu a^dag - mu^* a) v on the truncated basis of size v.size(), by
/// Taylor series over substeps with generator norm at most 1/2.
inline std::vector<Complex> exp_generator_action(Complex mu, std::vector<Complex> v) {
    const std::size_t d = v.size();
    if (mu == Complex{0.0, 0.0} || d == 0) return v;

    const double bound = 2.0 * std::abs(mu) * std::sqrt(static_cast<double>(d));
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(bound / 0.5)));
    const Complex step_mu = mu / static_cast<double>(steps);

    std::vector<Complex> term(d), next(d);
    for (std::size_t step = 0; step < steps; ++step) {
        term = v;
        for (int k = 1; k <= 60; ++k) {
            apply_generator(step_mu / static_cast<double>(k), term, next);
            double term_sq = 0.0, acc_sq = 0.0;
            for (std::size_t n = 0; n < d; ++n) {
                v[n] += next[n];
                term_sq += std::norm(next[n]);
                acc_sq += std::norm(v[n]);
            }
            std::swap(term, next);
            if (term_sq <= 1e-36 * acc_sq) break;
        }
    }
    return v;
}

/// D(mu) applied to a converged vector. The computation is padded by the
/// guard band and cropped back; fails if the displaced state escapes the basis.
inline FockVector apply_displacement(Complex mu, const FockVector& v) {
    const std::size_t d = v.dim();
    std::vector<Complex> padded(d + guard_band(d), Complex{0.0, 0.0});
    std::copy(v.amps.begin(), v.amps.end(), padded.begin());
    padded = exp_generator_action(mu, std::move(padded));
    padded.resize(d);

    auto out = make_vector(std::move(padded));
    const double drift = std::abs(out.norm_sq() - v.norm_sq());
    if (drift > 1e-10 || !out.converged()) {
        char buf[96];
        std::snprintf(buf, sizeof buf, " (norm drift %.3g, tail %.3g)", drift, out.tail_mass);
        fail(ErrorCode::TruncationInsufficient, "displaced state escapes the basis at dim " + std::to_string(d) + buf);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Moments

namespace detail {

inline Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    Complex acc{0.0, 0.0};
    for (std::size_t n = 0; n < a.size(); ++n) acc += std::conj(a[n]) * b[n];
    return acc;
}

}  // namespace detail

/// Expectation values of X, P, X^2, P^2 from the ladder actions
///   <a> = sum sqrt(n+1) c_n^* c_{n+1},  <a^2> = sum sqrt((n+1)(n+2)) c_n^* c_{n+2}.
inline MomentSet moments(const FockVector& v, double sigma) {
    const double norm = v.norm_sq();
    if (std::abs(norm - 1.0) > 1e-10)
        fail(ErrorCode::InvalidArgument, "moments() needs a normalized state (norm " + std::to_string(norm) + ")");

    const auto& c = v.amps;
    const std::size_t d = c.size();
    Complex a1{0.0, 0.0}, a2{0.0, 0.0};
    double number = 0.0;
    for (std::size_t n = 0; n < d; ++n) {
        const double k = static_cast<double>(n);
        number += k * std::norm(c[n]);
        if (n + 1 < d) a1 += std::sqrt(k + 1.0) * std::conj(c[n]) * c[n + 1];
        if (n + 2 < d) a2 += std::sqrt((k + 1.0) * (k + 2.0)) * std::conj(c[n]) * c[n + 2];
    }

    MomentSet m;
    m.norm = norm;
    m.mean_x = 2.0 * sigma * a1.real() / norm;
    m.mean_p = a1.imag() / (sigma * norm);
    m.mean_x2 = sigma * sigma * (2.0 * a2.real() + 2.0 * number + norm) / norm;
    m.mean_p2 = (2.0 * number + norm - 2.0 * a2.real()) / (4.0 * sigma * sigma * norm);
    return m;
}

// ---------------------------------------------------------------------------
// Evolution

/// 1/2 [ (1 + A_w) D(s/2) + (1 - A_w) D(-s/2) ] |phi>, unnormalized and
/// without the <psi_f|psi_i> prefactor.
inline std::vector<Complex> postselected_branch(const FockVector& pointer_vec, Complex aw, double s) {
    const auto plus = apply_displacement(Complex{0.5 * s, 0.0}, pointer_vec);
    const auto minus = apply_displacement(Complex{-0.5 * s, 0.0}, pointer_vec);
    std::vector<Complex> out(pointer_vec.dim());
    for (std::size_t n = 0; n < out.size(); ++n)
        out[n] = 0.5 * ((1.0 + aw) * plus.amps[n] + (1.0 - aw) * minus.amps[n]);
    return out;
}

inline JointOutcome evolve_and_postselect(const FockVector& pointer_vec, const SelectionPair& sel, double s) {
    require_converged(pointer_vec, "pointer state");
    const Complex aw = weak_value(sel);
    const double overlap = sel.overlap();

    auto branch = postselected_branch(pointer_vec, aw, s);
    for (auto& a : branch) a *= overlap;
    double prob = 0.0;
    for (const auto& a : branch) prob += std::norm(a);
    if (!(prob > 0.0)) fail(ErrorCode::OrthogonalSelection, "postselected branch vanished");

    const double inv = 1.0 / std::sqrt(prob);
    for (auto& a : branch) a *= inv;

    const auto [p_plus, p_minus] = sigma_x_branch_weights(sel);
    return {make_vector(std::move(branch)), prob, p_plus, p_minus};
}

/// Moments of p+ D(s/2)|phi><phi|D(s/2)^dag + p- D(-s/2)|phi><phi|D(-s/2)^dag.
/// The sigma_x eigenprojectors are orthogonal, so the reduced pointer state
/// has no cross terms and each branch contributes its pure-state moments.
inline MomentSet nonpostselected_moments(const FockVector& pointer_vec, const SelectionPair& sel, double s,
                                         double sigma) {
    require_converged(pointer_vec, "pointer state");
    const auto [p_plus, p_minus] = sigma_x_branch_weights(sel);
    const auto up = moments(apply_displacement(Complex{0.5 * s, 0.0}, pointer_vec), sigma);
    const auto down = moments(apply_displacement(Complex{-0.5 * s, 0.0}, pointer_vec), sigma);

    MomentSet m;
    m.norm = p_plus * up.norm + p_minus * down.norm;
    m.mean_x = p_plus * up.mean_x + p_minus * down.mean_x;
    m.mean_p = p_plus * up.mean_p + p_minus * down.mean_p;
    m.mean_x2 = p_plus * up.mean_x2 + p_minus * down.mean_x2;
    m.mean_p2 = p_plus * up.mean_p2 + p_minus * down.mean_p2;
    return m;
}

// ---------------------------------------------------------------------------
// Quantum Fisher information

/// Full two-branch evolution, or its expansion to first order in s:
/// |phi> + (s/2) A_w (a^dag - a)|phi>.
enum class Evolution { Full, FirstOrder };

struct QfiResult {
    double analytic = 0.0;
    double numeric = 0.0;
};

/// 4 [ <dpsi|dpsi> - |<psi|dpsi>|^2 ] for psi = phi/||phi||, written in terms
/// of the unnormalized phi and its derivative.
inline double qfi_from_unnormalized(std::span<const Complex> phi, std::span<const Complex> dphi) {
    const double n = detail::inner(phi, phi).real();
    const double dd = detail::inner(dphi, dphi).real();
    const Complex pd = detail::inner(phi, dphi);
    return 4.0 * (dd / n - std::norm(pd) / (n * n));
}

inline double qfi_tolerance(double f) { return std::max(1e-6, 1e-4 * std::abs(f)); }

namespace detail {

inline std::vector<Complex> evolved_branch(const FockVector& v, Complex aw, double s, Evolution evo) {
    if (evo == Evolution::Full) return postselected_branch(v, aw, s);
    auto gen = apply_momentum_generator(v.amps);
    std::vector<Complex> out(v.dim());
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = v.amps[n] + 0.5 * s * aw * gen[n];
    return out;
}

}  // namespace detail

/// Computes the QFI of the normalized postselected pointer with respect to s
/// twice: analytically (d/ds D(+-s/2) = +-(a^dag - a) D(+-s/2) / 2) and by a
/// central difference with step max(1e-6, 1e-3 s). Throws DerivativeMismatch
/// if they disagree by more than max(1e-6, 1e-4 F).
inline QfiResult qfi_postselected_detailed(const FockVector& pointer_vec, const SelectionPair& sel, double s,
                                           Evolution evo = Evolution::Full) {
    require_converged(pointer_vec, "pointer state");
    if (!(s >= 0.0)) fail(ErrorCode::InvalidArgument, "measurement strength must be non-negative");
    const Complex aw = weak_value(sel);
    const std::size_t d = pointer_vec.dim();

    const auto phi = detail::evolved_branch(pointer_vec, aw, s, evo);

    std::vector<Complex> dphi(d);
    if (evo == Evolution::Full) {
        const auto plus = apply_displacement(Complex{0.5 * s, 0.0}, pointer_vec);
        const auto minus = apply_displacement(Complex{-0.5 * s, 0.0}, pointer_vec);
        const auto gplus = apply_momentum_generator(plus.amps);
        const auto gminus = apply_momentum_generator(minus.amps);
        for (std::size_t n = 0; n < d; ++n) dphi[n] = 0.25 * ((1.0 + aw) * gplus[n] - (1.0 - aw) * gminus[n]);
    } else {
        const auto gen = apply_momentum_generator(pointer_vec.amps);
        for (std::size_t n = 0; n < d; ++n) dphi[n] = 0.5 * aw * gen[n];
    }

    const double h = std::max(1e-6, 1e-3 * s);
    const auto fwd = detail::evolved_branch(pointer_vec, aw, s + h, evo);
    const auto bwd = detail::evolved_branch(pointer_vec, aw, s - h, evo);
    std::vector<Complex> dphi_fd(d);
    for (std::size_t n = 0; n < d; ++n) dphi_fd[n] = (fwd[n] - bwd[n]) / (2.0 * h);

    QfiResult r{qfi_from_unnormalized(phi, dphi), qfi_from_unnormalized(phi, dphi_fd)};
    if (std::abs(r.analytic - r.numeric) > qfi_tolerance(r.analytic))
        fail(ErrorCode::DerivativeMismatch, "analytic QFI " + std::to_string(r.analytic) +
                                                " vs finite-difference " + std::to_string(r.numeric));
    return r;
}

inline double qfi_postselected(const FockVector& pointer_vec, const SelectionPair& sel, double s,
                               Evolution evo = Evolution::Full) {
    return qfi_postselected_detailed(pointer_vec, sel, s, evo).analytic;
}

// ---------------------------------------------------------------------------
// Truncation policy

/// Mean photon number of the undisplaced pointer.
inline double estimated_photons(const PointerSpec& pointer) {
    if (const auto* c = std::get_if<Coherent>(&pointer)) return c->r * c->r;
    if (const auto* q = std::get_if<SqueezedVacuum>(&pointer)) return std::sinh(q->eta) * std::sinh(q->eta);
    const auto& cat = std::get<EvenCat>(pointer);
    return cat.r * cat.r;
}

/// max(32, ceil(m + 8 sqrt(m+1) + 8)) with m inflated by the displacement:
/// m <- (sqrt(m) + |s|/2 + r)^2, r = 0 for the squeezed vacuum.
inline std::size_t initial_dim(const PointerSpec& pointer, double s) {
    double m = estimated_photons(pointer);
    double amplitude = 0.0;
    if (const auto* c = std::get_if<Coherent>(&pointer)) amplitude = c->r;
    if (const auto* cat = std::get_if<EvenCat>(&pointer)) amplitude = cat->r;
    const double root = std::sqrt(m) + 0.5 * std::abs(s) + amplitude;
    m = root * root;
    const double want = std::ceil(m + 8.0 * std::sqrt(m + 1.0) + 8.0);
    const auto dim = static_cast<std::size_t>(std::max<double>(static_cast<double>(kMinDim), want));
    return std::min(dim, max_dim());
}

template <typename T>
struct Truncated {
    T value;
    std::size_t dim;
};

/// Runs fn(pointer_vector) at the policy dimension, doubling the dimension
/// on TruncationInsufficient up to max_dim().
template <typename Fn>
auto with_truncation(const PointerSpec& pointer, double s, Fn&& fn)
    -> Truncated<std::invoke_result_t<Fn&, const FockVector&>> {
    const std::size_t ceiling = max_dim();
    std::size_t dim = initial_dim(pointer, s);
    for (;;) {
        try {
            const auto vec = pointer_vector(pointer, dim);
            return {fn(vec), dim};
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TruncationInsufficient) throw;
            if (dim >= ceiling)
                fail(ErrorCode::TruncationInsufficient,
                     std::string(family_name(pointer)) + " pointer not converged at the ceiling dim " +
                         std::to_string(ceiling) + " (" + e.what() + ")");
            dim = std::min(2 * dim, ceiling);
        }
    }
}

// ---------------------------------------------------------------------------
// Closed-form assembled final states

/// The normalized final pointer assembled with the closed-form normalization
/// coefficient. The coherent branch uses explicit displaced coherent states
/// with the e^{-+ i s Im(alpha)/2} phases; the others apply D(+-s/2).
inline FockVector assembled_final_state(const SelectionPair& sel, const PointerSpec& pointer,
                                        const CouplingConfig& cfg, std::size_t dim) {
    const Complex aw = weak_value(sel);
    const double s = cfg.s();
    const double coef = final_state_norm(sel, pointer, cfg);

    std::vector<Complex> plus, minus;
    if (const auto* c = std::get_if<Coherent>(&pointer)) {
        const Complex alpha = c->alpha();
        const Complex ph = std::polar(1.0, -0.5 * s * alpha.imag());
        plus = coherent_vector(alpha + 0.5 * s, dim).amps;
        minus = coherent_vector(alpha - 0.5 * s, dim).amps;
        for (auto& a : plus) a *= ph;
        for (auto& a : minus) a *= std::conj(ph);
    } else {
        const auto base = pointer_vector(pointer, dim);
        plus = apply_displacement(Complex{0.5 * s, 0.0}, base).amps;
        minus = apply_displacement(Complex{-0.5 * s, 0.0}, base).amps;
    }

    std::vector<Complex> out(dim);
    for (std::size_t n = 0; n < dim; ++n) out[n] = 0.5 * coef * ((1.0 + aw) * plus[n] + (1.0 - aw) * minus[n]);
    return make_vector(std::move(out));
}

}  // namespace weaklab::fock
