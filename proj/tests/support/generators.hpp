#pragma once

// Seeded samplers for the property tests. Each property draws a fixed number
// of cases from its own stream so failures reproduce exactly.

#include <cstdint>
#include <random>

#include "weaklab/core.hpp"

namespace testgen {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }

    // Away from the orthogonal point theta = pi.
    double theta() { return uniform(0.0, 0.95 * weaklab::kPi); }
    double angle() { return uniform(0.0, weaklab::kTwoPi); }
    double strength() { return coin() ? std::pow(10.0, uniform(-5.0, -1.0)) : uniform(0.0, 2.0); }
    double magnitude() { return uniform(0.0, 1.5); }

private:
    std::mt19937_64 rng_;
};

inline constexpr int kCases = 60;

}  // namespace testgen
