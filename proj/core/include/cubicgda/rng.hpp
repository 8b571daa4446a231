#pragma once

#include "cubicgda/types.hpp"

#include <cstdint>
#include <initializer_list>

namespace cubicgda {

/// Counter-based pseudo-random stream. A stream is identified by a 64-bit
/// key derived from a seed plus an arbitrary list of tags, and the i-th
/// draw is a pure function of (key, i). Substreams keyed by e.g.
/// (iteration, block id) are therefore reproducible independently of
/// evaluation order, which is what the batch-sampling contract requires.
class KeyedRng {
public:
    KeyedRng() = default;
    explicit KeyedRng(std::uint64_t key) : key_(key) {}

    /// Derive a stream key by folding tags into the seed.
    static KeyedRng from(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
        std::uint64_t k = mix(seed ^ 0x7fb5d329728ea185ULL);
        for (std::uint64_t t : tags) k = mix(k ^ mix(t + 0x1609bff314e76d14ULL));
        return KeyedRng(k);
    }

    std::uint64_t next_u64() { return mix(key_ ^ mix(counter_++)); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n), n >= 1. Fixed-point scaling; the bias of
    /// ~n/2^64 is irrelevant at desk-scale n.
    std::int64_t next_below(std::int64_t n) {
        require(n >= 1, "KeyedRng::next_below: n must be >= 1");
        const unsigned __int128 wide =
            static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(n);
        return static_cast<std::int64_t>(wide >> 64);
    }

    /// Standard normal via Box-Muller (two uniforms per pair, spare cached).
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    Vec gaussian_vector(Eigen::Index n) {
        Vec v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = next_gaussian();
        return v;
    }

private:
    // SplitMix64 finalizer.
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace cubicgda
