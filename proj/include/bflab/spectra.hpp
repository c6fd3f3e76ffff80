#pragma once

#include <cstdint>
#include <vector>

#include "bflab/boolean_function.hpp"

namespace bflab {

// Unsigned 128-bit accumulator; sum-of-squares reaches 2^(3n), past uint64
// for n >= 22.
using uint128 = unsigned __int128;

// Walsh spectrum: values[u] = sum over x of (-1)^(f(x) + x.u).
struct WalshSpectrum {
    std::vector<std::int64_t> values;
};

// Autocorrelation spectrum: values[u] = sum over x of (-1)^(f(x) + f(x+u)).
struct AutocorrelationSpectrum {
    std::vector<std::int64_t> values;
};

// All indicators of one function, computed in a single pass.
struct IndicatorSummary {
    int n = 0;
    std::int64_t nonlinearity = 0;
    std::int64_t absolute_indicator = 0; // max |values[u]| over u != 0
    std::uint64_t argmax_u = 0;          // smallest u attaining it
    uint128 sum_of_squares = 0;          // sum over all u of values[u]^2
    double ai_ratio = 0.0;               // absolute_indicator / (2*sqrt(l*ln l))
};

// In-place Walsh-Hadamard transform of an integer vector; the length must be
// a power of two (InvalidArgument otherwise).
void walsh_transform(std::vector<std::int64_t>& values);

// Fast in-place butterfly transform, O(n * 2^n).
WalshSpectrum walsh_fast(const BooleanFunction& f);

// Direct double-loop evaluation of the definition, O(4^n).  Reference oracle;
// throws DimensionTooLarge for n > 16.
WalshSpectrum walsh_naive(const BooleanFunction& f);

// Via the convolution identity 2^n * ac[u] = WHT(walsh^2)[u], O(n * 2^n).
AutocorrelationSpectrum autocorrelation_fast(const BooleanFunction& f);

// Direct single-direction sum over all x, O(2^n).  Reference oracle; throws
// IndexOutOfRange for u >= 2^n.
std::int64_t autocorrelation_naive(const BooleanFunction& f, std::uint64_t u);

// Nonlinearity 2^(n-1) - max|walsh| / 2 (Hamming distance to the affine class).
std::int64_t nonlinearity(const BooleanFunction& f);

// Absolute indicator: max |ac[u]| over u != 0, with the smallest attaining u.
struct AbsoluteIndicator {
    std::int64_t value = 0;
    std::uint64_t argmax_u = 0;
};
AbsoluteIndicator absolute_indicator(const BooleanFunction& f);

// Sum of squared autocorrelations over all u (equals 2^-n * sum of walsh^4).
uint128 sum_of_squares(const BooleanFunction& f);

// One-pass computation of the full summary.
IndicatorSummary analyze(const BooleanFunction& f);

namespace detail {

// Autocorrelation in one direction straight off the packed words:
// XOR-permutes the table by u with masked delta-swaps, then popcounts the
// mismatch word-by-word.  O(2^n / 64); used by the pair-tail experiment.
std::int64_t directional_autocorrelation(const std::vector<std::uint64_t>& words,
                                         int n, std::uint64_t u);

} // namespace detail

} // namespace bflab
