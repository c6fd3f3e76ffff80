#include "bflab/generators.hpp"

#include <bit>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "bflab/errors.hpp"

namespace bflab {

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
    if (bound == 0) {
        throw InvalidArgument("next_below requires a positive bound");
    }
    // Reject the partial cycle at the bottom so every residue is equally
    // likely: 2^64 - threshold is an exact multiple of bound.
    const std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t r = next();
    while (r < threshold) {
        r = next();
    }
    return r % bound;
}

BooleanFunction random_function(int n, std::uint64_t seed) {
    if (n < 2 || n > 30) {
        throw InvalidDimension("random_function requires 2 <= n <= 30, got " +
                               std::to_string(n));
    }
    SplitMix64 rng(seed);
    const std::uint64_t l = std::uint64_t{1} << n;
    std::vector<std::uint64_t> words((l + 63) / 64);
    for (auto& w : words) {
        w = rng.next(); // bit i of output i/64 is truth-table position i
    }
    if (l < 64) {
        words[0] &= (std::uint64_t{1} << l) - 1;
    }
    return BooleanFunction(n, std::move(words));
}

BooleanFunction two_period_extend(const BooleanFunction& g) {
    const int n = g.variables() + 1;
    if (g.variables() < 2 || n > 30) {
        throw InvalidDimension(
            "two_period_extend requires 2 <= inner n <= 29, got " +
            std::to_string(g.variables()));
    }
    const std::uint64_t gl = g.size();
    std::vector<std::uint64_t> words;
    if (gl >= 64) {
        words = g.words();
        words.insert(words.end(), g.words().begin(), g.words().end());
    } else {
        words = {g.words()[0] | (g.words()[0] << gl)};
    }
    return BooleanFunction(n, std::move(words));
}

BooleanFunction disturb(const BooleanFunction& f, std::uint64_t r,
                        std::uint64_t seed) {
    const std::uint64_t l = f.size();
    if (r > l) {
        throw TooManyFlips("cannot flip " + std::to_string(r) + " of " +
                           std::to_string(l) + " positions");
    }
    // Partial Fisher-Yates over a virtual identity array: only displaced
    // entries are stored, so no 2^n index array is materialized.
    BooleanFunction out = f;
    SplitMix64 rng(seed);
    std::unordered_map<std::uint64_t, std::uint64_t> displaced;
    for (std::uint64_t i = 0; i < r; ++i) {
        const std::uint64_t j = i + rng.next_below(l - i);
        const auto at = [&](std::uint64_t k) {
            const auto it = displaced.find(k);
            return it == displaced.end() ? k : it->second;
        };
        const std::uint64_t pick = at(j);
        displaced[j] = at(i);
        out.flip_bit(pick);
    }
    return out;
}

BooleanFunction constant_function(int n, bool value) {
    BooleanFunction f(n);
    if (value) {
        const std::uint64_t l = f.size();
        for (std::uint64_t x = 0; x < l; ++x) {
            f.set_bit(x, true);
        }
    }
    return f;
}

BooleanFunction affine_function(int n, std::uint64_t mask, bool constant) {
    BooleanFunction f(n);
    const std::uint64_t l = f.size();
    if (mask >= l) {
        throw IndexOutOfRange("affine mask " + std::to_string(mask) +
                              " out of range for n=" + std::to_string(n));
    }
    for (std::uint64_t x = 0; x < l; ++x) {
        const bool parity = (std::popcount(x & mask) & 1) != 0;
        f.set_bit(x, parity != constant); // parity XOR constant
    }
    return f;
}

} // namespace bflab
