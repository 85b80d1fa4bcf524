#pragma once

#include <cstdint>
#include <random>

namespace fidelity {

// splitmix64 finalizer.
inline std::uint64_t mix_seed(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// Derives an independent sub-seed from a master seed and a stream index.
// Loop iterations seeded this way draw the same values no matter which
// thread runs them, so parallel and serial execution agree bit for bit.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return mix_seed(master + (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
    return std::mt19937_64{seed};
}

}  // namespace fidelity
