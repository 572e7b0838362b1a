#pragma once

#include <cstdint>

namespace itsec {

/// SplitMix64. Fixed algorithm so fuzz campaigns replay identically across
/// implementations and platforms (documented in the README).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound) via rejection (bias-free, platform-stable).
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    /// Uniform integer in [lo, hi] inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Derives an independent stream for subtask `index` (per-trial seeds).
    std::uint64_t derive(std::uint64_t index) {
        SplitMix64 d(state_ ^ (0x5851f42d4c957f2dULL * (index + 1)));
        return d.next();
    }

private:
    std::uint64_t state_;
};

} // namespace itsec
