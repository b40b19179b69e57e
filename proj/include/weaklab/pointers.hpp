#pragma once

// Closed-form first moments of the normalized postselected pointer state for
// coherent, squeezed-vacuum and even-cat pointers, valid at any strength s.
//
// Conventions:
//   X = sigma (a^dag + a),  P = i/(2 sigma) (a^dag - a),  [X, P] = i
//   exp(-i g A (x) P) = 1/2 (1 + A) (x) D(s/2) + 1/2 (1 - A) (x) D(-s/2),  s = g / sigma
//   S(xi) = exp(xi^* a^2 / 2 - xi a^dag^2 / 2),  xi = eta e^{i delta}
//
// The postselected pointer is proportional to
//   (1 + A_w) D(s/2)|phi> + (1 - A_w) D(-s/2)|phi>
// and every function below is an exact evaluation of its moments.

#include <cmath>
#include <string>
#include <string_view>
#include <variant>

#include "weaklab/core.hpp"
#include "weaklab/selection.hpp"

namespace weaklab {

/// Coherent pointer |alpha>, alpha = r e^{i phi_c}.
struct Coherent {
    double r = 0.0;
    double phi_c = 0.0;

    Coherent() = default;
    Coherent(double r_, double phi_c_) : r(r_), phi_c(wrap_two_pi(phi_c_)) {
        if (!std::isfinite(r_) || !std::isfinite(phi_c_) || r_ < 0.0)
            fail(ErrorCode::InvalidArgument, "coherent amplitude r must be finite and non-negative");
    }
    Complex alpha() const { return std::polar(r, phi_c); }
};

/// Squeezed vacuum S(xi)|0>, xi = eta e^{i delta}.
struct SqueezedVacuum {
    double eta = 0.0;
    double delta = 0.0;

    SqueezedVacuum() = default;
    SqueezedVacuum(double eta_, double delta_) : eta(eta_), delta(wrap_two_pi(delta_)) {
        if (!std::isfinite(eta_) || !std::isfinite(delta_) || eta_ < 0.0)
            fail(ErrorCode::InvalidArgument, "squeeze magnitude eta must be finite and non-negative");
    }
    Complex xi() const { return std::polar(eta, delta); }
};

/// Even cat K(|alpha> + |-alpha>). alpha = 0 is allowed and gives the vacuum.
struct EvenCat {
    double r = 0.0;
    double phi_c = 0.0;

    EvenCat() = default;
    EvenCat(double r_, double phi_c_) : r(r_), phi_c(wrap_two_pi(phi_c_)) {
        if (!std::isfinite(r_) || !std::isfinite(phi_c_) || r_ < 0.0)
            fail(ErrorCode::InvalidArgument, "cat amplitude r must be finite and non-negative");
    }
    Complex alpha() const { return std::polar(r, phi_c); }
};

using PointerSpec = std::variant<Coherent, SqueezedVacuum, EvenCat>;

inline std::string_view family_name(const PointerSpec& p) {
    struct {
        std::string_view operator()(const Coherent&) const { return "coherent"; }
        std::string_view operator()(const SqueezedVacuum&) const { return "squeezed"; }
        std::string_view operator()(const EvenCat&) const { return "cat"; }
    } visitor;
    return std::visit(visitor, p);
}

/// Coupling g, beam width sigma and number of repetitions N.
class CouplingConfig {
public:
    CouplingConfig(double g, double sigma, long n_runs = 1) : g_(g), sigma_(sigma), n_runs_(n_runs) {
        if (!(sigma > 0.0) || !std::isfinite(sigma))
            fail(ErrorCode::InvalidArgument, "beam width sigma must be positive and finite");
        if (!std::isfinite(g))
            fail(ErrorCode::InvalidArgument, "coupling g must be finite");
        if (n_runs < 1)
            fail(ErrorCode::InvalidArgument, "repetition count must be at least 1");
        if (!std::isfinite(g / sigma))
            fail(ErrorCode::InvalidArgument, "measurement strength g/sigma is not finite");
    }

    static CouplingConfig from_strength(double s, double sigma = 1.0, long n_runs = 1) {
        return CouplingConfig(s * sigma, sigma, n_runs);
    }

    double g() const noexcept { return g_; }
    double sigma() const noexcept { return sigma_; }
    long n_runs() const noexcept { return n_runs_; }
    double s() const noexcept { return g_ / sigma_; }

private:
    double g_;
    double sigma_;
    long n_runs_;
};

/// Mean quadratures. X is reported both raw and in units of sigma.
struct QuadratureMeans {
    double x = 0.0;
    double x_in_sigma = 0.0;
    double p = 0.0;
};

/// Squeezed <P> variants. AsPrinted keeps the commonly quoted form with a bare
/// 1 where the exact moment has cosh(2 eta); the two agree only at eta = 0.
enum class SqueezedMomentumForm { Exact, AsPrinted };

namespace detail {

/// c_plus^* c_minus = (1 + A_w^*)(1 - A_w).
inline Complex branch_cross(Complex aw) { return std::conj(1.0 + aw) * (1.0 - aw); }

/// |cosh eta + e^{i delta} sinh eta|^2
inline double squeeze_stretch_sq(const SqueezedVacuum& p) {
    return std::norm(Complex{std::cosh(p.eta), 0.0} + std::polar(std::sinh(p.eta), p.delta));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Coherent pointer

/// Normalization lambda of
///   lambda/2 [ (1+A_w) e^{-i s Im(alpha)/2} |alpha + s/2> + (1-A_w) e^{i s Im(alpha)/2} |alpha - s/2> ].
inline double coherent_norm(const SelectionPair& sel, const Coherent& ptr, const CouplingConfig& cfg) {
    const Complex aw = weak_value(sel);
    const double s = cfg.s();
    const Complex alpha = ptr.alpha();
    const double cross = (detail::branch_cross(aw) * std::polar(1.0, 2.0 * s * alpha.imag())).real();
    const double bracket = 1.0 + std::norm(aw) + cross * std::exp(-0.5 * s * s);
    return std::sqrt(2.0 / bracket);
}

inline double coherent_mean_x(const SelectionPair& sel, const Coherent& ptr, const CouplingConfig& cfg) {
    const Complex aw = weak_value(sel);
    const double s = cfg.s();
    const Complex alpha = ptr.alpha();
    const double lam = coherent_norm(sel, ptr, cfg);
    const double cross = (std::conj(1.0 - aw) * (1.0 + aw) * std::polar(1.0, -2.0 * s * alpha.imag())).real();
    return cfg.sigma() * lam * lam *
           ((1.0 + std::norm(aw)) * alpha.real() + s * aw.real() +
            cross * alpha.real() * std::exp(-0.5 * s * s));
}

inline double coherent_mean_p(const SelectionPair& sel, const Coherent& ptr, const CouplingConfig& cfg) {
    const Complex aw = weak_value(sel);
    const double s = cfg.s();
    const Complex alpha = ptr.alpha();
    const double lam = coherent_norm(sel, ptr, cfg);
    const Complex inner = (1.0 - aw) * std::conj(1.0 + aw) * std::polar(1.0, 2.0 * s * alpha.imag()) *
                          Complex{s, -2.0 * alpha.imag()};
    return lam * lam / (4.0 * cfg.sigma()) *
           (2.0 * (1.0 + std::norm(aw)) * alpha.imag() - inner.imag() * std::exp(-0.5 * s * s));
}

// ---------------------------------------------------------------------------
// Squeezed vacuum pointer

/// Normalization gamma' of gamma'/2 [ (1+A_w)|s/2, xi> + (1-A_w)|-s/2, xi> ].
inline double squeezed_norm(const SelectionPair& sel, const SqueezedVacuum& ptr, const CouplingConfig& cfg) {
    const Complex aw = weak_value(sel);
    const double s = cfg.s();
    const double damp = std::exp(-0.5 * s * s * detail::squeeze_stretch_sq(ptr));
    const double bracket = 1.0 + std::norm(aw) + (1.0 - std::norm(aw)) * damp;
    return std::sqrt(2.0 / bracket);
}

inline double squeezed_mean_x(const SelectionPair& sel, const SqueezedVacuum& ptr, const CouplingConfig& cfg) {
    const Complex aw = weak_value(sel);
    const double s = cfg.s();
    const double gam = squeezed_norm(sel, ptr, cfg);
    const double damp = std::exp(-0.5 * s * s * detail::squeeze_stretch_sq(ptr));
    return cfg.g() * gam * gam *
           (aw.real() - aw.imag() * damp * std::sinh(2.0 * ptr.eta) * std::sin(ptr.delta));
}

inline double squeezed_mean_p(const SelectionPair& sel, const SqueezedVacuum& ptr, const CouplingConfig& cfg,
                              SqueezedMomentumForm form = SqueezedMomentumForm::Exact) {
    const Complex aw = weak_value(sel);
    const double s = cfg.s();
    const double gam = squeezed_norm(sel, ptr, cfg);
    const double damp = std::exp(-0.5 * s * s * detail::squeeze_stretch_sq(ptr));
    const double base = form == SqueezedMomentumForm::Exact ? std::cosh(2.0 * ptr.eta) : 1.0;
    const double sigma = cfg.sigma();
    return cfg.g() * gam * gam / (2.0 * sigma * sigma) * aw.imag() * damp *
           (base + std::sinh(2.0 * ptr.eta) * std::cos(ptr.delta));
}

// ---------------------------------------------------------------------------
// Even cat pointer

/// K = (2 + 2 e^{-2|alpha|^2})^{-1/2}
inline double cat_norm(const EvenCat& ptr) {
    return 1.0 / std::sqrt(2.0 + 2.0 * std::exp(-2.0 * ptr.r * ptr.r));
}

namespace detail {

struct CatOverlaps {
    double k_sq;      // K^2
    double gauss;     // e^{-s^2/2}
    double sin_term;  // sin(2 s Im alpha)
    double cos_term;  // cos(2 s Im alpha)
    double e_plus;    // e^{-|2 alpha + s|^2 / 2}
    double e_minus;   // e^{-|2 alpha - s|^2 / 2}
};

inline CatOverlaps cat_overlaps(const EvenCat& ptr, double s) {
    const Complex alpha = ptr.alpha();
    const double k = cat_norm(ptr);
    return {k * k,
            std::exp(-0.5 * s * s),
            std::sin(2.0 * s * alpha.imag()),
            std::cos(2.0 * s * alpha.imag()),
            std::exp(-0.5 * std::norm(2.0 * alpha + s)),
            std::exp(-0.5 * std::norm(2.0 * alpha - s))};
}

}  // namespace detail

/// Normalization kappa' of kappa'/2 [ (1+A_w) D(s/2) + (1-A_w) D(-s/2) ] |Theta_+>.
inline double cat_final_norm(const SelectionPair& sel, const EvenCat& ptr, const CouplingConfig& cfg) {
    const Complex aw = weak_value(sel);
    const auto o = detail::cat_overlaps(ptr, cfg.s());
    const double one_minus = 1.0 - std::norm(aw);

    // <Theta|D(-s)|Theta> summed over its four coherent-state overlaps; real
    // because the even cat is symmetric under alpha -> -alpha.
    const Complex alpha = ptr.alpha();
    const double s = cfg.s();
    const Complex overlap = o.k_sq * (std::polar(o.gauss, 2.0 * s * alpha.imag()) +
                                      std::polar(o.gauss, -2.0 * s * alpha.imag()) + o.e_plus + o.e_minus);
    const double shifted = real_part_checked(overlap, "even-cat displaced overlap");

    const double inv_sq = 0.5 * (1.0 + std::norm(aw)) + 0.5 * one_minus * shifted;
    return 1.0 / std::sqrt(inv_sq);
}

inline double cat_mean_x(const SelectionPair& sel, const EvenCat& ptr, const CouplingConfig& cfg) {
    const Complex aw = weak_value(sel);
    const double s = cfg.s();
    const Complex alpha = ptr.alpha();
    const auto o = detail::cat_overlaps(ptr, s);
    const double kap = cat_final_norm(sel, ptr, cfg);
    const double braces = s * aw.real() * (1.0 + std::exp(-2.0 * ptr.r * ptr.r)) +
                          2.0 * aw.imag() * alpha.real() * o.sin_term * o.gauss -
                          aw.imag() * alpha.imag() * (o.e_plus - o.e_minus);
    return 2.0 * cfg.sigma() * kap * kap * o.k_sq * braces;
}

inline double cat_mean_p(const SelectionPair& sel, const EvenCat& ptr, const CouplingConfig& cfg) {
    const Complex aw = weak_value(sel);
    const double s = cfg.s();
    const Complex alpha = ptr.alpha();
    const auto o = detail::cat_overlaps(ptr, s);
    const double kap = cat_final_norm(sel, ptr, cfg);
    const double braces = (2.0 * alpha.real() + s) * o.e_plus +
                          4.0 * o.sin_term * alpha.imag() * o.gauss +
                          2.0 * s * o.cos_term * o.gauss -
                          (2.0 * alpha.real() - s) * o.e_minus;
    return kap * kap * o.k_sq * aw.imag() / (2.0 * cfg.sigma()) * braces;
}

// ---------------------------------------------------------------------------
// Zero-mean Gaussian pointer (r = 0 or eta = 0)

/// Z = 1 + (1 - |A_w|^2)(e^{-s^2/2} - 1)/2
inline double gaussian_limit_z(const SelectionPair& sel, const CouplingConfig& cfg) {
    const Complex aw = weak_value(sel);
    const double s = cfg.s();
    return 1.0 + 0.5 * (1.0 - std::norm(aw)) * std::expm1(-0.5 * s * s);
}

inline double gaussian_limit_mean_x(const SelectionPair& sel, const CouplingConfig& cfg) {
    return cfg.g() * weak_value(sel).real() / gaussian_limit_z(sel, cfg);
}

inline double gaussian_limit_mean_p(const SelectionPair& sel, const CouplingConfig& cfg) {
    const double s = cfg.s();
    const double sigma = cfg.sigma();
    return cfg.g() * weak_value(sel).imag() * std::exp(-0.5 * s * s) /
           (2.0 * sigma * sigma * gaussian_limit_z(sel, cfg));
}

// ---------------------------------------------------------------------------
// Family dispatch

inline QuadratureMeans make_means(double x, double p, double sigma) { return {x, x / sigma, p}; }

inline QuadratureMeans initial_means(const PointerSpec& pointer, double sigma) {
    if (const auto* c = std::get_if<Coherent>(&pointer)) {
        const Complex alpha = c->alpha();
        return make_means(2.0 * sigma * alpha.real(), alpha.imag() / sigma, sigma);
    }
    // squeezed vacuum and even cat are parity symmetric
    return make_means(0.0, 0.0, sigma);
}

inline QuadratureMeans final_means(const SelectionPair& sel, const PointerSpec& pointer, const CouplingConfig& cfg,
                                   SqueezedMomentumForm form = SqueezedMomentumForm::Exact) {
    const double sigma = cfg.sigma();
    if (const auto* c = std::get_if<Coherent>(&pointer))
        return make_means(coherent_mean_x(sel, *c, cfg), coherent_mean_p(sel, *c, cfg), sigma);
    if (const auto* q = std::get_if<SqueezedVacuum>(&pointer))
        return make_means(squeezed_mean_x(sel, *q, cfg), squeezed_mean_p(sel, *q, cfg, form), sigma);
    const auto& cat = std::get<EvenCat>(pointer);
    return make_means(cat_mean_x(sel, cat, cfg), cat_mean_p(sel, cat, cfg), sigma);
}

/// Shift = final mean minus initial pointer mean.
inline QuadratureMeans mean_shift(const SelectionPair& sel, const PointerSpec& pointer, const CouplingConfig& cfg,
                                  SqueezedMomentumForm form = SqueezedMomentumForm::Exact) {
    const auto fin = final_means(sel, pointer, cfg, form);
    const auto ini = initial_means(pointer, cfg.sigma());
    return make_means(fin.x - ini.x, fin.p - ini.p, cfg.sigma());
}

/// Normalization coefficient of the assembled final state (lambda, gamma' or kappa').
inline double final_state_norm(const SelectionPair& sel, const PointerSpec& pointer, const CouplingConfig& cfg) {
    if (const auto* c = std::get_if<Coherent>(&pointer)) return coherent_norm(sel, *c, cfg);
    if (const auto* q = std::get_if<SqueezedVacuum>(&pointer)) return squeezed_norm(sel, *q, cfg);
    return cat_final_norm(sel, std::get<EvenCat>(pointer), cfg);
}

}  // namespace weaklab
