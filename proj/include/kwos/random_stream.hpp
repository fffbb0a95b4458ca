#pragma once

#include <cstdint>
#include <random>

namespace kwos {

/// Mixes a seed and an ordinal into a new 64-bit seed (splitmix64 finalizer
/// applied twice). Used to derive per-point and per-particle streams.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t ordinal) noexcept;

/// Per-particle pseudo-random stream. Identical (seed, index) pairs reproduce
/// the identical draw sequence; distinct indices give independent streams.
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, std::uint64_t particle_index);

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Standard normal via Box-Muller; the second variate is cached.
    double normal() noexcept;

private:
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace kwos
