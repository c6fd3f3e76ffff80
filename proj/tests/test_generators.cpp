#include <doctest.h>

#include <cstdint>

#include "bflab/generators.hpp"
#include "bflab/spectra.hpp"

using namespace bflab;

namespace {

std::uint64_t hamming_distance(const BooleanFunction& a,
                               const BooleanFunction& b) {
    REQUIRE(a.variables() == b.variables());
    std::uint64_t d = 0;
    for (std::uint64_t x = 0; x < a.size(); ++x) {
        d += a.bit(x) != b.bit(x);
    }
    return d;
}

} // namespace

TEST_CASE("SplitMix64: reference outputs") {
    SplitMix64 a(0);
    CHECK(a.next() == 0xE220A8397B1DCDAFull);
    CHECK(a.next() == 0x6E789E6AA1B965F4ull);
    CHECK(a.next() == 0x06C45D188009454Full);
    SplitMix64 b(42);
    CHECK(b.next() == 0xBDD732262FEB6E95ull);
    CHECK(b.next() == 0x28EFE333B266F103ull);
}

TEST_CASE("SplitMix64: next_below stays in range and is unbiased-ish") {
    SplitMix64 rng(123);
    CHECK(rng.next_below(1) == 0);
    std::uint64_t buckets[8] = {};
    for (int i = 0; i < 8000; ++i) {
        const std::uint64_t v = rng.next_below(8);
        REQUIRE(v < 8);
        ++buckets[v];
    }
    for (const std::uint64_t c : buckets) {
        CHECK(c > 850);
        CHECK(c < 1150);
    }
    CHECK_THROWS_AS(rng.next_below(0), InvalidArgument);
}

TEST_CASE("stream_seed: identity at stream 0, distinct streams") {
    CHECK(stream_seed(77, 0) == 77);
    CHECK(stream_seed(77, 1) != stream_seed(77, 2));
    CHECK(stream_seed(77, 1) != stream_seed(78, 1));
}

TEST_CASE("random_function: golden table for (n=3, seed=42)") {
    // First SplitMix64(42) output is 0x...95; its low 8 bits, LSB first.
    CHECK(serialize(random_function(3, 42), Format::ascii01) == "10101001");
}

TEST_CASE("random_function: deterministic, seed-sensitive") {
    CHECK(random_function(10, 5) == random_function(10, 5));
    CHECK(random_function(10, 5) != random_function(10, 6));
}

TEST_CASE("random_function: dimension range") {
    CHECK_THROWS_AS(random_function(1, 0), InvalidDimension);
    CHECK_THROWS_AS(random_function(31, 0), InvalidDimension);
    CHECK(random_function(2, 0).size() == 4);
}

TEST_CASE("random_function: bits are roughly balanced") {
    const BooleanFunction f = random_function(14, 7);
    std::uint64_t ones = 0;
    for (std::uint64_t x = 0; x < f.size(); ++x) ones += f.bit(x);
    const double frac = static_cast<double>(ones) / static_cast<double>(f.size());
    CHECK(frac > 0.47);
    CHECK(frac < 0.53);
}

TEST_CASE("two_period_extend: table doubles, indicators as constructed") {
    const BooleanFunction g = parse("00000001", 3, Format::ascii01);
    const BooleanFunction f = two_period_extend(g);
    CHECK(f.variables() == 4);
    CHECK(serialize(f, Format::ascii01) == "0000000100000001");
    CHECK(nonlinearity(g) == 1);
    CHECK(nonlinearity(f) == 2);
    const AbsoluteIndicator ai = absolute_indicator(f);
    CHECK(ai.value == 16);
    CHECK(ai.argmax_u == 8);
}

TEST_CASE("two_period_extend: spectrum relation against the inner function") {
    const BooleanFunction g = random_function(7, 2024);
    const BooleanFunction f = two_period_extend(g);
    CHECK(nonlinearity(f) == 2 * nonlinearity(g));
    const AutocorrelationSpectrum acg = autocorrelation_fast(g);
    const AutocorrelationSpectrum acf = autocorrelation_fast(f);
    for (std::uint64_t w = 0; w < g.size(); ++w) {
        CHECK(acf.values[w] == 2 * acg.values[w]);            // (w, 0)
        CHECK(acf.values[w + g.size()] == 2 * acg.values[w]); // (w, 1)
    }
    CHECK(acf.values[g.size()] == static_cast<std::int64_t>(f.size()));
}

TEST_CASE("two_period_extend: dimension range") {
    CHECK_THROWS_AS(two_period_extend(BooleanFunction(1)), InvalidDimension);
    CHECK_THROWS_AS(two_period_extend(BooleanFunction(30)), InvalidDimension);
    CHECK(two_period_extend(BooleanFunction(5)).size() == 64);
}

TEST_CASE("disturb: flips exactly r distinct positions") {
    const BooleanFunction f = random_function(8, 99);
    for (const std::uint64_t r : {std::uint64_t{0}, std::uint64_t{1},
                                  std::uint64_t{17}, std::uint64_t{100},
                                  std::uint64_t{256}}) {
        const BooleanFunction fr = disturb(f, r, 31337);
        CHECK(hamming_distance(f, fr) == r);
    }
    // r = 2^n flips every position: the complement.
    const BooleanFunction comp = disturb(f, 256, 1);
    for (std::uint64_t x = 0; x < 256; ++x) {
        CHECK(comp.bit(x) == !f.bit(x));
    }
}

TEST_CASE("disturb: deterministic, r bounds enforced") {
    const BooleanFunction f = random_function(6, 1);
    CHECK(disturb(f, 5, 2) == disturb(f, 5, 2));
    CHECK(disturb(f, 0, 2) == f);
    CHECK_THROWS_AS(disturb(f, 65, 2), TooManyFlips);
}

TEST_CASE("disturb: single flip of the zero function") {
    const BooleanFunction fr = disturb(BooleanFunction(3), 1, 424242);
    CHECK(nonlinearity(fr) == 1);
    CHECK(absolute_indicator(fr).value == 4);
}

TEST_CASE("disturb: nonlinearity moves at most r") {
    for (int i = 0; i < 10; ++i) {
        const BooleanFunction f = random_function(9, 600 + i);
        const std::uint64_t r = 1 + 3 * static_cast<std::uint64_t>(i);
        const BooleanFunction fr = disturb(f, r, 1000 + i);
        const std::int64_t diff = nonlinearity(fr) - nonlinearity(f);
        CHECK(static_cast<std::uint64_t>(std::abs(diff)) <= r);
    }
}

TEST_CASE("constant and affine generators") {
    CHECK(serialize(constant_function(2, false), Format::ascii01) == "0000");
    CHECK(serialize(constant_function(2, true), Format::ascii01) == "1111");
    CHECK(serialize(affine_function(3, 1, false), Format::ascii01) ==
          "01010101");
    CHECK(serialize(affine_function(3, 1, true), Format::ascii01) ==
          "10101010");
    CHECK(serialize(affine_function(3, 0, false), Format::ascii01) ==
          "00000000");
    CHECK(nonlinearity(affine_function(8, 173, true)) == 0);
    CHECK_THROWS_AS(affine_function(3, 8, false), IndexOutOfRange);
}
