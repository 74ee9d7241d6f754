#pragma once

#include <cstdint>

namespace antdisk {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen over std::mt19937_64 because
// its output is fully specified by this header, so generated workloads and
// CSV output are identical across standard libraries and platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 mantissa bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform integer in [0, n), unbiased (Lemire's method with rejection).
    std::uint64_t uniform_int(std::uint64_t n) {
        if (n == 0) return 0;
        std::uint64_t x = next();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            std::uint64_t threshold = -n % n;
            while (lo < threshold) {
                x = next();
                m = static_cast<__uint128_t>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::uint64_t state_;
};

// Derives an independent stream seed from a base seed plus stream
// coordinates, by chaining SplitMix64 steps. Used for per-problem,
// per-repeat and per-ant streams so parallel and serial execution agree.
inline std::uint64_t derive_seed(std::uint64_t base) {
    return SplitMix64(base).next();
}

template <typename... Rest>
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t part, Rest... rest) {
    SplitMix64 s(base);
    return derive_seed(s.next() ^ (part + 0x9e3779b97f4a7c15ULL), rest...);
}

} // namespace antdisk
