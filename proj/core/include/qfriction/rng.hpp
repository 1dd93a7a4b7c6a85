#pragma once

#include <cstdint>

namespace qfriction::rng {

/// 64-bit mix finalizer (SplitMix64). Bijective, good avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
 * Counter-based stream generator.
 *
 * Output i of a stream is mix64(key + i * gamma): a pure function of
 * (seed, stream, i), so trajectories can be generated in any order, on
 * any number of threads, with bit-identical results. Streams are
 * derived by hashing the seed with the stream index, which keeps
 * distinct trajectories statistically independent.
 */
class CounterStream {
public:
    CounterStream(std::uint64_t seed, std::uint64_t stream)
        : key_(mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t next_u64() { return mix64(key_ + (counter_++) * gamma_); }

    /// Uniform double in [0, 1), 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; the second value of each pair is
    /// cached within the stream.
    double next_normal();

private:
    static constexpr std::uint64_t gamma_ = 0x9e3779b97f4a7c15ULL;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace qfriction::rng
