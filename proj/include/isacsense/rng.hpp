#pragma once

// Deterministic random number generation. A fixed, self-contained generator
// (xoshiro256++) keeps every sampled stream bit-identical across platforms,
// standard libraries, and thread counts; std::mt19937 with <random>
// distributions would not give that guarantee.
//
// Streams are addressed by (seed, stream): both feed a splitmix64 expansion
// of the state, so chunked simulations can hand each chunk its own
// statistically independent stream derived from one user-supplied seed.

#include <cmath>
#include <cstdint>

#include "isacsense/specials.hpp"

namespace isacsense {

namespace detail {

inline std::uint64_t splitmix64_next(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace detail

/// xoshiro256++ generator with splitmix64 seeding.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t sm = seed;
        detail::splitmix64_next(sm);
        sm ^= 0x6a09e667f3bcc909ull + stream * 0x3c6ef372fe94f82bull;
        for (auto& word : state_) word = detail::splitmix64_next(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard exponential. Uses -log1p(-u) so u=0 maps to 0 exactly.
    double exp1() { return -std::log1p(-u01()); }

    /// Standard normal via Box-Muller; the partner deviate is cached.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = u01();
        while (u1 <= 0.0) u1 = u01();
        const double u2 = u01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * kPi * u2;
        cached_ = r * std::sin(theta);
        have_cached_ = true;
        return r * std::cos(theta);
    }

    /// Poisson deviate. Product method below mean 10, PTRS above; both are
    /// exact samplers, so the split point only affects speed.
    std::uint64_t poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (mean < 10.0) return poisson_product(mean);
        return poisson_ptrs(mean);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t poisson_product(double mean) {
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double prod = u01();
        while (prod > limit) {
            ++k;
            prod *= u01();
        }
        return k;
    }

    // Transformed rejection with squeeze (Hormann's PTRS). Exact for mean >= 10.
    std::uint64_t poisson_ptrs(double mean) {
        const double log_mean = std::log(mean);
        const double b = 0.931 + 2.53 * std::sqrt(mean);
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double vr = 0.9277 - 3.6224 / (b - 2.0);
        for (;;) {
            const double u = u01() - 0.5;
            const double v = u01();
            const double us = 0.5 - std::fabs(u);
            const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
            if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(kf);
            if (kf < 0.0 || (us < 0.013 && v > us)) continue;
            const double k = kf;
            if (std::log(v * inv_alpha / (a / (us * us) + b)) <= k * log_mean - mean - log_gamma(k + 1.0)) {
                return static_cast<std::uint64_t>(kf);
            }
        }
    }

    std::uint64_t state_[4];
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace isacsense
