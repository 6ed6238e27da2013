#pragma once

#include <cstdint>

namespace tset {

/* splitmix64; deterministic across platforms, unlike <random> distributions */
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /* uniform in [0, n), rejection sampled */
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    long long range(long long lo, long long hi) { /* inclusive bounds */
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /* true with probability num/den */
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
};

/* per-trial seed from a master seed and a trial counter */
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
    SplitMix64 s(master ^ (counter + 1) * 0xd6e8feb86659fd93ULL);
    s.next();
    return s.next();
}

} // namespace tset
