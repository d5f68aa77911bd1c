#pragma once

#include "galois/arith.hpp"

#include <cstdint>

namespace galois {

// Deterministic splittable generator. A stream is identified by a 64-bit
// key; drawing advances a counter and hashes (key, counter) with the
// SplitMix64 finalizer. split(label) derives an independent child stream
// from the parent key and the label only, so splitting is const and does
// not disturb the parent's draw sequence -- the property the test
// pipeline relies on for reproducible per-step and per-index streams.
class Rng {
  public:
    explicit Rng(uint64_t key) : key_(key) {}

    uint64_t next_u64() {
        ctr_ += 1;
        return mix(key_ + 0x9e3779b97f4a7c15ULL * ctr_);
    }

    Rng split(uint64_t label) const {
        return Rng(mix(key_ ^ mix(label + 0x632be59bd9b4e019ULL)));
    }

    // Uniform value in [0, bound), bound >= 1, by top-bit rejection.
    Natural below(const Natural& bound) {
        if (bound < 1) throw std::invalid_argument("Rng::below: bound must be >= 1");
        if (bound == 1) return 0;
        unsigned bits = bit_length(bound);
        unsigned words = (bits + 63) / 64;
        unsigned excess = words * 64 - bits;
        for (;;) {
            Natural v = 0;
            for (unsigned i = 0; i < words; ++i) v = (v << 64) | next_u64();
            v >>= excess;
            if (v < bound) return v;
        }
    }

    // Uniform value in [1, bound): rejects zero.
    Natural nonzero_below(const Natural& bound) {
        for (;;) {
            Natural v = below(bound);
            if (v != 0) return v;
        }
    }

    uint64_t below_u64(uint64_t bound) {
        uint64_t threshold = (~bound + 1) % bound;  // 2^64 mod bound
        for (;;) {
            uint64_t v = next_u64();
            if (v >= threshold) return v % bound;
        }
    }

  private:
    static uint64_t mix(uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    uint64_t key_;
    uint64_t ctr_ = 0;
};

}  // namespace galois
