#pragma once

#include <cstdint>

namespace gonal {

// Deterministic 64-bit generator (splitmix64). All randomness in the library
// flows through this so that runs are reproducible bit-for-bit across
// platforms; the standard <random> distributions are implementation-defined
// and must not be used for anything that ends up in a certificate.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform draw in [0, bound) by rejection; bound >= 1.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

private:
    std::uint64_t state_;
};

// Independent stream for one trial of a seeded search. Streams for distinct
// trial indices are decorrelated, so trials can run in any order (or in
// parallel) and still reproduce the serial run exactly.
inline SeededRng trial_rng(std::uint64_t seed, std::uint64_t trial) {
    SeededRng mixer(seed ^ (0x9e3779b97f4a7c15ULL * (trial + 1)));
    return SeededRng(mixer.next());
}

}  // namespace gonal
