#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace jndmix {

// SplitMix64 output function (Steele, Lea, Flood 2014). Used both to derive
// per-item seeds and to expand a 64-bit seed into generator state.
constexpr std::uint64_t splitmix64(std::uint64_t state) {
    std::uint64_t z = state + 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Order-independent per-item seed: the sample produced for item `index`
// does not depend on how many other items were processed before it.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
    return splitmix64(master_seed ^ index);
}

// xoshiro256++ (Blackman, Vigna 2019) seeded through SplitMix64. Fixed
// algorithm, so a seed produces the same integer stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) {
            word = splitmix64(s);
            s += 0x9E3779B97F4A7C15ull;
        }
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

    // Uniform on the open interval (0, 1): (k + 1/2) * 2^-53 with k in [0, 2^53).
    double uniform_open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Unbiased integer in [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    bool next_sign_bit() { return (next_u64() >> 63) != 0; }

    // Standard-normal draw scaled by sigma, Box-Muller on own uniforms.
    // Bit-exactness of this path is per build (libm), not cross-platform.
    double normal(double sigma) {
        if (have_spare_) {
            have_spare_ = false;
            return spare_ * sigma;
        }
        const double u1 = uniform_open01();
        const double u2 = uniform_open01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle) * sigma;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace jndmix
