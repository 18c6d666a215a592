// Deterministic PRNG (splitmix64). Identical streams on every platform, so
// seeded reports are byte-identical.
#pragma once

#include <cstdint>

namespace defq {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    // Uniform integer in [lo, hi] inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool flip() { return (next() & 1) != 0; }

    // Independent child stream for trial #i of a suite.
    Rng child(std::uint64_t i) const {
        Rng r(state_ ^ (0xd1342543de82ef95ULL * (i + 1)));
        r.next();
        return r;
    }

private:
    std::uint64_t state_;
};

} // namespace defq
