#pragma once

// Two-level measured system: pre/postselection, weak value, and the
// postselection probability.
//
// The preselected state is cos(theta/2)|up> + e^{i phi} sin(theta/2)|down>,
// the postselected state is |up>, and the measured observable is sigma_x.

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "weaklab/core.hpp"

namespace weaklab {

/// Overlaps |<psi_f|psi_i>| below this are treated as orthogonal selection.
inline constexpr double kOverlapEpsilon = 1e-12;

using Spinor = std::array<Complex, 2>;
using Matrix2 = std::array<std::array<Complex, 2>, 2>;

inline constexpr Matrix2 kSigmaX{{{Complex{0, 0}, Complex{1, 0}}, {Complex{1, 0}, Complex{0, 0}}}};
inline constexpr Spinor kSpinUp{Complex{1, 0}, Complex{0, 0}};

/// Preselection angles. Canonicalized at construction: theta is clamped into
/// [0, pi] and phi wrapped into [0, 2pi).
class SelectionPair {
public:
    SelectionPair(double theta, double phi) {
        if (!std::isfinite(theta) || !std::isfinite(phi))
            fail(ErrorCode::InvalidArgument, "selection angles must be finite");
        theta_ = std::clamp(theta, 0.0, kPi);
        phi_ = wrap_two_pi(phi);
    }

    double theta() const noexcept { return theta_; }
    double phi() const noexcept { return phi_; }

    /// <psi_f|psi_i> = cos(theta/2).
    double overlap() const noexcept { return std::cos(0.5 * theta_); }

    Spinor preselected_state() const {
        return {Complex{std::cos(0.5 * theta_), 0.0}, std::polar(std::sin(0.5 * theta_), phi_)};
    }

    Spinor postselected_state() const { return kSpinUp; }

    friend bool operator==(const SelectionPair&, const SelectionPair&) = default;

private:
    double theta_ = 0.0;
    double phi_ = 0.0;
};

/// <A>_w = e^{i phi} tan(theta/2).
inline Complex weak_value(const SelectionPair& sel) {
    if (sel.overlap() <= kOverlapEpsilon)
        fail(ErrorCode::OrthogonalSelection,
             "pre- and postselected states are orthogonal (theta = " + std::to_string(sel.theta()) + ")");
    return std::polar(std::tan(0.5 * sel.theta()), sel.phi());
}

/// <psi_f|A|psi_i> / <psi_f|psi_i> for arbitrary spinors and an involutory
/// Hermitian observable.
inline Complex weak_value_general(const Spinor& pre, const Spinor& post, const Matrix2& observable) {
    auto norm_sq = [](const Spinor& v) { return std::norm(v[0]) + std::norm(v[1]); };
    if (std::abs(norm_sq(pre) - 1.0) > 1e-10 || std::abs(norm_sq(post) - 1.0) > 1e-10)
        fail(ErrorCode::InvalidArgument, "pre- and postselected states must be unit vectors");

    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            if (std::abs(observable[i][j] - std::conj(observable[j][i])) > 1e-12)
                fail(ErrorCode::InvalidObservable, "observable is not Hermitian");
            Complex sq = observable[i][0] * observable[0][j] + observable[i][1] * observable[1][j];
            Complex id = (i == j) ? Complex{1, 0} : Complex{0, 0};
            if (std::abs(sq - id) > 1e-12)
                fail(ErrorCode::InvalidObservable, "observable does not square to the identity");
        }
    }

    const Complex overlap = std::conj(post[0]) * pre[0] + std::conj(post[1]) * pre[1];
    if (std::abs(overlap) <= kOverlapEpsilon)
        fail(ErrorCode::OrthogonalSelection, "pre- and postselected states are orthogonal");

    Complex numer{0, 0};
    for (int i = 0; i < 2; ++i)
        numer += std::conj(post[i]) * (observable[i][0] * pre[0] + observable[i][1] * pre[1]);
    return numer / overlap;
}

/// P_s = cos^2(theta/2).
inline double postselection_probability(const SelectionPair& sel) noexcept {
    const double c = sel.overlap();
    return c * c;
}

/// Branch weights |<+x|psi_i>|^2 and |<-x|psi_i>|^2 of the unselected mixture.
inline std::pair<double, double> sigma_x_branch_weights(const SelectionPair& sel) noexcept {
    const double bias = std::sin(sel.theta()) * std::cos(sel.phi());
    return {0.5 * (1.0 + bias), 0.5 * (1.0 - bias)};
}

}  // namespace weaklab
