#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#ifndef WEAKLAB_VERSION
#define WEAKLAB_VERSION "0.1.0"
#endif

namespace weaklab {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr std::string_view kVersion = WEAKLAB_VERSION;

enum class ErrorCode {
    InvalidArgument,
    OrthogonalSelection,
    InvalidObservable,
    TruncationInsufficient,
    DerivativeMismatch,
    DegenerateNoise,
    ChiUndefined,
    BoundUndefined,
    ConfigInvalid,
    Io,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::OrthogonalSelection: return "orthogonal_selection";
    case ErrorCode::InvalidObservable: return "invalid_observable";
    case ErrorCode::TruncationInsufficient: return "truncation_insufficient";
    case ErrorCode::DerivativeMismatch: return "derivative_mismatch";
    case ErrorCode::DegenerateNoise: return "degenerate_noise";
    case ErrorCode::ChiUndefined: return "chi_undefined";
    case ErrorCode::BoundUndefined: return "bound_undefined";
    case ErrorCode::ConfigInvalid: return "config_invalid";
    case ErrorCode::Io: return "io_error";
    }
    return "unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the sweep driver, the CLI) can map it to a status or exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

/// Wraps an angle into [0, 2pi).
inline double wrap_two_pi(double angle) {
    double a = std::fmod(angle, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    // fmod of a value just below 0 can round up to exactly 2pi
    if (a >= kTwoPi) a = 0.0;
    return a;
}

/// Returns Re(z) for a quantity that is real by construction. The residual
/// imaginary part must stay within 1e-12 relative to |z| (or absolute, for |z| < 1).
inline double real_part_checked(Complex z, const char* what) {
    const double scale = std::max(1.0, std::abs(z));
    if (!(std::abs(z.imag()) <= 1e-12 * scale))
        fail(ErrorCode::InvalidArgument,
             std::string(what) + " has non-negligible imaginary part " + std::to_string(z.imag()));
    return z.real();
}

}  // namespace weaklab
