#pragma once

#include <bit>
#include <cstdint>

#include "boolnet/errors.hpp"
#include "boolnet/state.hpp"

namespace boolnet {

// The one PRNG used by every randomized routine in this library:
// xoshiro256** (Blackman & Vigna), state expanded from a 64-bit seed with
// SplitMix64.  Sampling runs derive an independent generator per sample via
// Rng::stream(seed, index), so results are bit-identical no matter how the
// samples are scheduled across threads.
struct SplitMix64 {
    std::uint64_t x;
    std::uint64_t next() {
        std::uint64_t z = (x += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        SplitMix64 sm{seed};
        for (auto& w : s_) w = sm.next();
    }

    // Generator for sample `index` of a run seeded with `seed`.
    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        return Rng(seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
    }

    std::uint64_t next_u64() {
        std::uint64_t r = rotl(s_[1] * 5, 7) * 9;
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return r;
    }

    // Uniform value in [0, bound), unbiased via masked rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw validation_error("below(0)");
        if (bound == 1) return 0;
        std::uint64_t mask = ~std::uint64_t(0) >> std::countl_zero(bound - 1);
        for (;;) {
            std::uint64_t r = next_u64() & mask;
            if (r < bound) return r;
        }
    }

    bool coin() { return next_u64() >> 63; }

    // Uniform state on n coordinates.
    State uniform_state(std::uint32_t n) {
        State s(n);
        for (std::uint32_t i = 0; i < n; i += 64) {
            std::uint32_t width = (n - i < 64) ? n - i : 64;
            std::uint64_t bits = next_u64();
            if (width < 64) bits &= (~std::uint64_t(0) >> (64 - width));
            s.deposit_bits(i, width, bits);
        }
        return s;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

} // namespace boolnet
