#include "bflab/spectra.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>

#include "bflab/errors.hpp"

namespace bflab {

namespace {

// In-place Walsh-Hadamard butterfly.  With |input| summing to at most 2^(2n)
// every intermediate stays within int64 for n <= 30.
void wht_in_place(std::vector<std::int64_t>& v) {
    const std::size_t l = v.size();
    for (std::size_t len = 1; len < l; len <<= 1) {
        for (std::size_t i = 0; i < l; i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                const std::int64_t a = v[j];
                const std::int64_t b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
        }
    }
}

std::vector<std::int64_t> sign_vector(const BooleanFunction& f) {
    const std::uint64_t l = f.size();
    std::vector<std::int64_t> v(l);
    for (std::uint64_t x = 0; x < l; ++x) {
        v[x] = f.bit(x) ? -1 : 1;
    }
    return v;
}

} // namespace

void walsh_transform(std::vector<std::int64_t>& values) {
    if (values.empty() || (values.size() & (values.size() - 1)) != 0) {
        throw InvalidArgument("walsh_transform needs a power-of-two length");
    }
    wht_in_place(values);
}

WalshSpectrum walsh_fast(const BooleanFunction& f) {
    WalshSpectrum s{sign_vector(f)};
    wht_in_place(s.values);
    return s;
}

WalshSpectrum walsh_naive(const BooleanFunction& f) {
    if (f.variables() > 16) {
        throw DimensionTooLarge("walsh_naive is O(4^n); refuse n = " +
                                std::to_string(f.variables()) + " > 16");
    }
    const std::uint64_t l = f.size();
    std::vector<std::int8_t> sign(l);
    for (std::uint64_t x = 0; x < l; ++x) {
        sign[x] = f.bit(x) ? -1 : 1;
    }
    WalshSpectrum s;
    s.values.resize(l);
    for (std::uint64_t u = 0; u < l; ++u) {
        std::int64_t acc = 0;
        for (std::uint64_t x = 0; x < l; ++x) {
            const std::int64_t v = sign[x];
            acc += (std::popcount(x & u) & 1) ? -v : v;
        }
        s.values[u] = acc;
    }
    return s;
}

AutocorrelationSpectrum autocorrelation_fast(const BooleanFunction& f) {
    WalshSpectrum w = walsh_fast(f);
    const std::uint64_t l = f.size();
    for (auto& v : w.values) {
        v *= v; // sums to 2^(2n) by Parseval, so the transform below is safe
    }
    wht_in_place(w.values);
    for (auto& v : w.values) {
        v /= static_cast<std::int64_t>(l); // exact: 2^n * ac = WHT(walsh^2)
    }
    return AutocorrelationSpectrum{std::move(w.values)};
}

std::int64_t autocorrelation_naive(const BooleanFunction& f, std::uint64_t u) {
    const std::uint64_t l = f.size();
    if (u >= l) {
        throw IndexOutOfRange("direction " + std::to_string(u) +
                              " out of range for n=" +
                              std::to_string(f.variables()));
    }
    std::vector<std::int8_t> sign(l);
    for (std::uint64_t x = 0; x < l; ++x) {
        sign[x] = f.bit(x) ? -1 : 1;
    }
    std::int64_t acc = 0;
    for (std::uint64_t x = 0; x < l; ++x) {
        acc += static_cast<std::int64_t>(sign[x]) * sign[x ^ u];
    }
    return acc;
}

std::int64_t nonlinearity(const BooleanFunction& f) {
    const WalshSpectrum w = walsh_fast(f);
    std::int64_t best = 0;
    for (const std::int64_t v : w.values) {
        const std::int64_t a = std::llabs(v);
        if (a > best) best = a;
    }
    return (static_cast<std::int64_t>(f.size()) - best) / 2;
}

AbsoluteIndicator absolute_indicator(const BooleanFunction& f) {
    const AutocorrelationSpectrum ac = autocorrelation_fast(f);
    AbsoluteIndicator out;
    out.value = -1; // so u = 1 is reported even when every |ac| is zero
    for (std::uint64_t u = 1; u < ac.values.size(); ++u) {
        const std::int64_t a = std::llabs(ac.values[u]);
        if (a > out.value) {
            out.value = a;
            out.argmax_u = u;
        }
    }
    return out;
}

uint128 sum_of_squares(const BooleanFunction& f) {
    const AutocorrelationSpectrum ac = autocorrelation_fast(f);
    uint128 total = 0;
    for (const std::int64_t v : ac.values) {
        total += static_cast<uint128>(v) * static_cast<uint128>(v);
    }
    return total;
}

IndicatorSummary analyze(const BooleanFunction& f) {
    const std::uint64_t l = f.size();
    std::vector<std::int64_t> v = sign_vector(f);
    wht_in_place(v);

    std::int64_t max_walsh = 0;
    for (std::int64_t w : v) {
        const std::int64_t a = std::llabs(w);
        if (a > max_walsh) max_walsh = a;
    }

    for (auto& w : v) {
        w *= w;
    }
    wht_in_place(v);

    IndicatorSummary out;
    out.n = f.variables();
    out.nonlinearity = (static_cast<std::int64_t>(l) - max_walsh) / 2;
    out.absolute_indicator = -1; // see absolute_indicator()
    for (std::uint64_t u = 0; u < l; ++u) {
        const std::int64_t ac = v[u] / static_cast<std::int64_t>(l);
        out.sum_of_squares +=
            static_cast<uint128>(ac) * static_cast<uint128>(ac);
        if (u != 0) {
            const std::int64_t a = std::llabs(ac);
            if (a > out.absolute_indicator) {
                out.absolute_indicator = a;
                out.argmax_u = u;
            }
        }
    }
    const double dl = static_cast<double>(l);
    out.ai_ratio = static_cast<double>(out.absolute_indicator) /
                   (2.0 * std::sqrt(dl * std::log(dl)));
    return out;
}

namespace detail {

std::int64_t directional_autocorrelation(const std::vector<std::uint64_t>& words,
                                         int n, std::uint64_t u) {
    const std::uint64_t l = std::uint64_t{1} << n;
    if (u >= l) {
        throw IndexOutOfRange("direction " + std::to_string(u) +
                              " out of range for n=" + std::to_string(n));
    }
    // Bit-position masks for XOR-permuting within a 64-bit word: mask k keeps
    // the positions whose k-th index bit is 0.
    static constexpr std::uint64_t kMask[6] = {
        0x5555555555555555ull, 0x3333333333333333ull, 0x0F0F0F0F0F0F0F0Full,
        0x00FF00FF00FF00FFull, 0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull,
    };
    const std::uint64_t lo = u & 63;
    const std::uint64_t hi = u >> 6;
    std::uint64_t mismatches = 0;
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::uint64_t p = words[w ^ hi];
        for (int k = 0; k < 6; ++k) {
            if ((lo >> k) & 1) {
                const int s = 1 << k;
                p = ((p >> s) & kMask[k]) | ((p & kMask[k]) << s);
            }
        }
        mismatches += static_cast<std::uint64_t>(std::popcount(words[w] ^ p));
    }
    return static_cast<std::int64_t>(l) - 2 * static_cast<std::int64_t>(mismatches);
}

} // namespace detail

} // namespace bflab
