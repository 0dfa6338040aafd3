#pragma once

#include <cmath>
#include <cstdint>

namespace chenflow {

// splitmix64: small, fast, and fully deterministic across platforms.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in (0, 1]
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }
};

// Stream used for one Monte Carlo sample.  Seeds are derived from
// (seed, sample index) so results do not depend on thread scheduling.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
    SplitMix64 mix(seed ^ (counter * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
    return mix.next_u64();
}

struct GaussianStream {
    SplitMix64 rng;
    double spare = 0.0;
    bool has_spare = false;

    GaussianStream(std::uint64_t seed, std::uint64_t counter)
        : rng(derive_seed(seed, counter)) {}

    double next() {
        if (has_spare) {
            has_spare = false;
            return spare;
        }
        const double u1 = rng.next_unit();
        const double u2 = rng.next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare = r * std::sin(a);
        has_spare = true;
        return r * std::cos(a);
    }
};

}  // namespace chenflow
