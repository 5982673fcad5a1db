#pragma once

#include <cstdint>

#include <gmpxx.h>

namespace gblab {

// SplitMix64. All seeded randomness in the workbench (round constants,
// affine layers, sampled keys/plaintexts) comes from this generator so that
// experiments are reproducible from a single 64-bit seed across platforms.
struct SplitMix64 {
    uint64_t state = 0;

    explicit SplitMix64(uint64_t seed = 0) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, bound) by rejection sampling; bound > 0.
    uint64_t below(uint64_t bound) {
        const uint64_t limit = bound * (UINT64_MAX / bound);
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    // Uniform mpz in [0, bound).
    mpz_class below(const mpz_class& bound) {
        if (bound.fits_ulong_p()) return mpz_class(below(uint64_t(bound.get_ui())));
        const size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
        const size_t words = (bits + 63) / 64;
        while (true) {
            mpz_class v = 0;
            for (size_t i = 0; i < words; ++i) {
                v <<= 64;
                v += mpz_class(next());
            }
            v >>= (words * 64 - bits);
            if (v < bound) return v;
        }
    }
};

}
