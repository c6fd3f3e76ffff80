#pragma once

#include <cstdint>

#include "bflab/boolean_function.hpp"

namespace bflab {

// SplitMix64 (https://prng.di.unimi.it/splitmix64.c): 64 bits of output per
// step, full-period, stateless seeding.  Pinned so every seeded result is
// reproducible bit-for-bit across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // next() scaled to [0, bound) without modulo bias (rejection sampling).
    std::uint64_t next_below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

// Derives the seed of an independent stream: seed XOR (golden-ratio constant
// times the stream index).  Gives each Monte Carlo trial its own generator so
// results do not depend on scheduling.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return seed ^ (0x9E3779B97F4A7C15ull * stream);
}

// Uniformly random function on n variables (2 <= n <= 30, else
// InvalidDimension): one SplitMix64 output per 64 truth-table bits, bit i of
// output i/64 becoming table position i.
BooleanFunction random_function(int n, std::uint64_t seed);

// Two-period extension f(x, b) = g(x) on one variable more: the table is g's
// table repeated twice.  Requires 2 <= g.variables() <= 29 (InvalidDimension).
BooleanFunction two_period_extend(const BooleanFunction& g);

// Flips exactly r distinct positions chosen uniformly (virtual partial
// Fisher-Yates with rejection sampling; no 2^n index array is materialized).
// Throws TooManyFlips for r > 2^n.
BooleanFunction disturb(const BooleanFunction& f, std::uint64_t r,
                        std::uint64_t seed);

// The constant function with the given value.
BooleanFunction constant_function(int n, bool value);

// The affine function f(x) = mask.x + constant (mask must fit in n bits,
// else IndexOutOfRange).
BooleanFunction affine_function(int n, std::uint64_t mask, bool constant);

} // namespace bflab
