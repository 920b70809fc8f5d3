#pragma once

#include <cstdint>

namespace riskdp {

/// SplitMix64 generator. Replications get independent streams derived from
/// (seed, stream_id), so parallel or out-of-order execution reproduces the
/// exact same draws.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    /// Uniform integer in [0, n), n >= 1. Lemire multiply-shift.
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    static SplitMix64 stream(std::uint64_t seed, std::uint64_t stream_id) {
        SplitMix64 mixer(seed ^ (0xD1B54A32D192ED03ULL * (stream_id + 1)));
        std::uint64_t derived = mixer.next();
        return SplitMix64(derived);
    }

private:
    std::uint64_t state_;
};

} // namespace riskdp
