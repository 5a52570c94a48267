#pragma once

#include <cstdint>

namespace rcmc {

// splitmix64: tiny, fast, and platform-independent, so seeded runs produce
// byte-identical traces everywhere.  split() derives an independent stream,
// which keeps per-chain randomness stable when chains are added or reordered.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next_u64()
    {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1) with 53 random bits
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in {0, ..., bound-1} via rejection (no modulo bias)
    uint64_t next_below(uint64_t bound)
    {
        const uint64_t limit = bound * (UINT64_MAX / bound);
        uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    bool next_bool() { return next_u64() >> 63; }

    SplitMix64 split() { return SplitMix64(next_u64() ^ 0x5851f42d4c957f2dull); }

private:
    uint64_t state_;
};

} // namespace rcmc
