#pragma once

#include <cstdint>
#include <vector>

#include "digitseq/phase.hpp"
#include "digitseq/sequences.hpp"

namespace testutil {

// Deterministic xorshift generator for reproducible property tests.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next() {
        std::uint64_t x = state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        return state = x;
    }

    std::uint64_t below(std::uint64_t n) { return next() % n; }

    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Random total g table together with zero initials.
inline digitseq::SequenceDef random_sequence(Rng& rng, int q, int beta, long long gmax = 3) {
    const auto size = digitseq::upow(static_cast<std::uint64_t>(q), beta);
    std::vector<long long> g(size), initial(size / static_cast<std::uint64_t>(q));
    for (auto& v : g) v = rng.range(-gmax, gmax);
    for (auto& v : initial) v = rng.range(-gmax, gmax);
    return digitseq::make_table(q, beta, std::move(g), std::move(initial));
}

} // namespace testutil
