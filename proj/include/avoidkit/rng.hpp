#pragma once

#include <cstdint>

namespace avoidkit {

/// Counter-based splitmix64 generator. Cheap to split into independent
/// per-task streams, so seeded verification can sample in parallel and
/// still produce schedule-independent results.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    /// Independent stream derived from this generator's seed.
    Rng split(std::uint64_t stream) const {
        return Rng(state_ ^ (0xA24BAED4963EE407ULL * (stream + 1) + 0x9FB21C651E98DF25ULL));
    }

private:
    std::uint64_t state_;
};

} // namespace avoidkit
