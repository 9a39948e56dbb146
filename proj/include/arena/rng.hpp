#pragma once

#include <cstdint>

namespace arena {

// Small deterministic PRNG (splitmix64 core). We avoid std::uniform_*
// distributions because their output is implementation-defined; checkpoint
// reproducibility requires bit-stable draws across toolchains.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) from the top 53 bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). Rejection-free modulo is biased for huge n;
    // n here is bounded by dataset size so multiply-shift is fine.
    uint64_t next_below(uint64_t n) {
        return static_cast<uint64_t>(next_double() * static_cast<double>(n));
    }

private:
    uint64_t state_;
};

// Deterministic stream derivation: mixes a base seed with stream labels so
// per-round and per-match generators are independent of evaluation order.
inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b = 0,
                            uint64_t c = 0) {
    Rng r(base ^ (a * 0xD6E8FEB86659FD93ULL) ^ (b * 0xA0761D6478BD642FULL) ^
          (c * 0xE7037ED1A0B428DBULL));
    return r.next_u64();
}

}  // namespace arena
