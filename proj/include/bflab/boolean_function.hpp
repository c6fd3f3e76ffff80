#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bflab/errors.hpp"

namespace bflab {

// Serialization formats for truth tables.
//
//   ascii01  one '0'/'1' character per truth-table position, position 0 first;
//            ASCII whitespace is ignored on input (line-wrapped files).
//   raw      packed bytes, LSB-first: bit (i mod 8) of byte (i / 8) holds
//            position i.  ceil(2^n / 8) bytes; padding bits must be zero.
//   hex      two lowercase nibbles per raw byte, high nibble first, bytes in
//            raw order.  Case-insensitive on input, whitespace ignored.
enum class Format { ascii01, raw, hex };

// A Boolean function f : F_2^n -> F_2 stored as a packed truth table.
//
// Bit i of words()[i / 64] holds f at the point with index i; coordinate j of
// a point is bit j of its index, so translating the input by u is index XOR u.
// Dimensions 1 <= n <= 30 are representable (2^30 bits = 128 MiB).
class BooleanFunction {
public:
    // Constructs the constant-zero function on n variables.
    explicit BooleanFunction(int n);

    // Adopts a packed table; `words` must hold exactly ceil(2^n / 64) words
    // and any bits above position 2^n - 1 must be zero.
    BooleanFunction(int n, std::vector<std::uint64_t> words);

    int variables() const { return n_; }

    // Number of truth-table positions, 2^n.
    std::uint64_t size() const { return std::uint64_t{1} << n_; }

    // f at point index x, unchecked.  Hot paths use this.
    bool bit(std::uint64_t x) const {
        return (words_[x >> 6] >> (x & 63)) & 1u;
    }

    // f at point index x; throws IndexOutOfRange for x >= 2^n.
    bool evaluate(std::uint64_t x) const;

    void set_bit(std::uint64_t x, bool value);

    // Flips f at point index x; throws IndexOutOfRange for x >= 2^n.
    void flip_bit(std::uint64_t x);

    const std::vector<std::uint64_t>& words() const { return words_; }

    bool operator==(const BooleanFunction& other) const = default;

private:
    int n_;
    std::vector<std::uint64_t> words_;
};

// Parses a truth table for an n-variable function.  Throws LengthMismatch if
// the content length disagrees with 2^n (including nonzero padding bits) and
// InvalidCharacter on anything outside the format's alphabet.
BooleanFunction parse(std::string_view text, int n, Format format);

// Serializes the truth table; inverse of parse for every format.
std::string serialize(const BooleanFunction& f, Format format);

// FNV-1a 64-bit hash of the raw-format bytes; stable fingerprint used by the
// CLI to tie generated tables to later analyses.
std::uint64_t table_hash(const BooleanFunction& f);

} // namespace bflab
