#include "bflab/boolean_function.hpp"

#include <cctype>

namespace bflab {

namespace {

constexpr int kMinVars = 1;
constexpr int kMaxVars = 30;

void check_dimension(int n) {
    if (n < kMinVars || n > kMaxVars) {
        throw InvalidDimension("dimension must be in [1, 30], got " +
                               std::to_string(n));
    }
}

std::uint64_t word_count(int n) {
    return ((std::uint64_t{1} << n) + 63) / 64;
}

// Bits at positions >= 2^n in the last word must stay zero.
std::uint64_t last_word_mask(int n) {
    const std::uint64_t l = std::uint64_t{1} << n;
    return (l % 64 == 0) ? ~std::uint64_t{0}
                         : (std::uint64_t{1} << (l % 64)) - 1;
}

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f';
}

} // namespace

BooleanFunction::BooleanFunction(int n) : n_(n) {
    check_dimension(n);
    words_.assign(word_count(n), 0);
}

BooleanFunction::BooleanFunction(int n, std::vector<std::uint64_t> words)
    : n_(n), words_(std::move(words)) {
    check_dimension(n);
    if (words_.size() != word_count(n)) {
        throw LengthMismatch("expected " + std::to_string(word_count(n)) +
                             " words for n=" + std::to_string(n) + ", got " +
                             std::to_string(words_.size()));
    }
    if ((words_.back() & ~last_word_mask(n)) != 0) {
        throw LengthMismatch("nonzero bits past position 2^n - 1");
    }
}

bool BooleanFunction::evaluate(std::uint64_t x) const {
    if (x >= size()) {
        throw IndexOutOfRange("point index " + std::to_string(x) +
                              " out of range for n=" + std::to_string(n_));
    }
    return bit(x);
}

void BooleanFunction::set_bit(std::uint64_t x, bool value) {
    if (x >= size()) {
        throw IndexOutOfRange("point index " + std::to_string(x) +
                              " out of range for n=" + std::to_string(n_));
    }
    const std::uint64_t mask = std::uint64_t{1} << (x & 63);
    if (value) {
        words_[x >> 6] |= mask;
    } else {
        words_[x >> 6] &= ~mask;
    }
}

void BooleanFunction::flip_bit(std::uint64_t x) {
    if (x >= size()) {
        throw IndexOutOfRange("point index " + std::to_string(x) +
                              " out of range for n=" + std::to_string(n_));
    }
    words_[x >> 6] ^= std::uint64_t{1} << (x & 63);
}

namespace {

BooleanFunction parse_ascii01(std::string_view text, int n) {
    const std::uint64_t l = std::uint64_t{1} << n;
    std::vector<std::uint64_t> words(word_count(n), 0);
    std::uint64_t pos = 0;
    for (char c : text) {
        if (is_space(c)) continue;
        if (c != '0' && c != '1') {
            throw InvalidCharacter(std::string("invalid character '") + c +
                                   "' in ascii01 truth table");
        }
        if (pos >= l) {
            throw LengthMismatch("ascii01 table longer than 2^n = " +
                                 std::to_string(l));
        }
        if (c == '1') words[pos >> 6] |= std::uint64_t{1} << (pos & 63);
        ++pos;
    }
    if (pos != l) {
        throw LengthMismatch("ascii01 table has " + std::to_string(pos) +
                             " entries, expected " + std::to_string(l));
    }
    return BooleanFunction(n, std::move(words));
}

BooleanFunction from_bytes(const std::vector<std::uint8_t>& bytes, int n,
                           const char* format) {
    const std::uint64_t l = std::uint64_t{1} << n;
    const std::uint64_t expected = (l + 7) / 8;
    if (bytes.size() != expected) {
        throw LengthMismatch(std::string(format) + " table has " +
                             std::to_string(bytes.size()) +
                             " bytes, expected " + std::to_string(expected));
    }
    std::vector<std::uint64_t> words(word_count(n), 0);
    for (std::uint64_t i = 0; i < bytes.size(); ++i) {
        words[i >> 3] |= std::uint64_t{bytes[i]} << ((i & 7) * 8);
    }
    if ((words.back() & ~last_word_mask(n)) != 0) {
        throw LengthMismatch(std::string(format) +
                             " table has nonzero padding bits");
    }
    return BooleanFunction(n, std::move(words));
}

BooleanFunction parse_raw(std::string_view text, int n) {
    std::vector<std::uint8_t> bytes(text.begin(), text.end());
    return from_bytes(bytes, n, "raw");
}

BooleanFunction parse_hex(std::string_view text, int n) {
    std::vector<std::uint8_t> bytes;
    int pending = -1;
    for (char c : text) {
        if (is_space(c)) continue;
        const int v = hex_nibble(c);
        if (v < 0) {
            throw InvalidCharacter(std::string("invalid character '") + c +
                                   "' in hex truth table");
        }
        if (pending < 0) {
            pending = v;
        } else {
            bytes.push_back(static_cast<std::uint8_t>((pending << 4) | v));
            pending = -1;
        }
    }
    if (pending >= 0) {
        throw LengthMismatch("hex table has an odd number of digits");
    }
    return from_bytes(bytes, n, "hex");
}

} // namespace

BooleanFunction parse(std::string_view text, int n, Format format) {
    check_dimension(n);
    switch (format) {
    case Format::ascii01: return parse_ascii01(text, n);
    case Format::raw: return parse_raw(text, n);
    case Format::hex: return parse_hex(text, n);
    }
    throw InvalidArgument("unknown format");
}

std::string serialize(const BooleanFunction& f, Format format) {
    const std::uint64_t l = f.size();
    switch (format) {
    case Format::ascii01: {
        std::string out(l, '0');
        for (std::uint64_t i = 0; i < l; ++i) {
            if (f.bit(i)) out[i] = '1';
        }
        return out;
    }
    case Format::raw: {
        const std::uint64_t nbytes = (l + 7) / 8;
        std::string out(nbytes, '\0');
        for (std::uint64_t i = 0; i < nbytes; ++i) {
            out[i] = static_cast<char>(
                (f.words()[i >> 3] >> ((i & 7) * 8)) & 0xFF);
        }
        return out;
    }
    case Format::hex: {
        static const char* digits = "0123456789abcdef";
        const std::string raw = serialize(f, Format::raw);
        std::string out;
        out.reserve(raw.size() * 2);
        for (char c : raw) {
            const auto b = static_cast<std::uint8_t>(c);
            out.push_back(digits[b >> 4]);
            out.push_back(digits[b & 15]);
        }
        return out;
    }
    }
    throw InvalidArgument("unknown format");
}

std::uint64_t table_hash(const BooleanFunction& f) {
    std::uint64_t h = 0xcbf29ce484222325ull; // FNV-1a 64 offset basis
    for (char c : serialize(f, Format::raw)) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace bflab
