#pragma once

// Binary unimodular sequences, Golay complementary pairs, and the
// Prouhet-Thue-Morse combinatorics used to schedule them.
//
// Everything in this header is exact integer arithmetic: the Golay property
// is an identity over the integers, so no tolerance enters anywhere.

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dopwave {

// A finite sequence with entries in {+1, -1}. Entries are chips; the index
// is discrete time in chip units. Immutable after construction.
class UnimodularSequence {
public:
    explicit UnimodularSequence(std::vector<int> values) : values_(std::move(values)) {
        if (values_.empty())
            throw std::invalid_argument("UnimodularSequence: length must be >= 1");
        for (int v : values_)
            if (v != 1 && v != -1)
                throw std::invalid_argument("UnimodularSequence: entries must be +1 or -1");
    }

    // Parse a compact sign string, '+' -> +1 and '-' -> -1.
    static UnimodularSequence from_signs(std::string_view signs) {
        std::vector<int> v;
        v.reserve(signs.size());
        for (char c : signs) {
            if (c == '+')
                v.push_back(1);
            else if (c == '-')
                v.push_back(-1);
            else
                throw std::invalid_argument("UnimodularSequence: sign string may contain only '+' and '-'");
        }
        return UnimodularSequence(std::move(v));
    }

    std::size_t length() const { return values_.size(); }
    int operator[](std::size_t i) const { return values_[i]; }
    const std::vector<int>& values() const { return values_; }

    std::string signs() const {
        std::string s;
        s.reserve(values_.size());
        for (int v : values_) s.push_back(v > 0 ? '+' : '-');
        return s;
    }

    UnimodularSequence negated() const {
        std::vector<int> v(values_.size());
        for (std::size_t i = 0; i < values_.size(); ++i) v[i] = -values_[i];
        return UnimodularSequence(std::move(v));
    }

    // Conjugate time reversal. On a real +/-1 alphabet conjugation is the
    // identity, so this is a plain reversal; the name keeps the operator's
    // role visible at call sites.
    UnimodularSequence reverse_conjugate() const {
        return UnimodularSequence(std::vector<int>(values_.rbegin(), values_.rend()));
    }

    bool operator==(const UnimodularSequence&) const = default;

private:
    std::vector<int> values_;
};

enum class SequenceTransform { negate, reverse_conjugate, both };

inline UnimodularSequence transform(const UnimodularSequence& s, SequenceTransform op) {
    switch (op) {
        case SequenceTransform::negate: return s.negated();
        case SequenceTransform::reverse_conjugate: return s.reverse_conjugate();
        case SequenceTransform::both: return s.reverse_conjugate().negated();
    }
    throw std::invalid_argument("transform: unknown operation");
}

// Autocorrelation of `a` at integer lag k, definition-level:
//   corr_k(a) = sum_l a[l+k] * a[l]
// (conjugation omitted: entries are real). Exact integer result.
inline std::int64_t correlation_at(const UnimodularSequence& a, const UnimodularSequence& b, int lag) {
    const int la = static_cast<int>(a.length());
    const int lb = static_cast<int>(b.length());
    std::int64_t acc = 0;
    for (int l = 0; l < lb; ++l) {
        const int j = l + lag;
        if (j >= 0 && j < la) acc += static_cast<std::int64_t>(a[static_cast<std::size_t>(j)]) * b[static_cast<std::size_t>(l)];
    }
    return acc;
}

// True iff corr_k(a) + corr_k(b) == 2L * delta_{k,0} at every lag in
// [-(L-1), L-1]. Exact integer check; this is the defining identity for a
// complementary pair.
inline bool is_golay(const UnimodularSequence& a, const UnimodularSequence& b) {
    if (a.length() != b.length())
        throw std::invalid_argument("is_golay: sequences must have equal length");
    const int L = static_cast<int>(a.length());
    for (int k = -(L - 1); k <= L - 1; ++k) {
        const std::int64_t s = correlation_at(a, a, k) + correlation_at(b, b, k);
        const std::int64_t want = (k == 0) ? 2 * static_cast<std::int64_t>(L) : 0;
        if (s != want) return false;
    }
    return true;
}

// A pair of equal-length sequences intended to be Golay complementary.
// The aggregate itself does not enforce the property; operations that
// require it validate on entry (see make_golay_pair / golay_expand).
struct GolayPair {
    UnimodularSequence a;
    UnimodularSequence b;
};

inline GolayPair make_golay_pair(UnimodularSequence a, UnimodularSequence b) {
    if (!is_golay(a, b))
        throw std::invalid_argument("make_golay_pair: sequences are not Golay complementary");
    return GolayPair{std::move(a), std::move(b)};
}

// Canonical length-8 Golay pair shipped with the library; this is the seed
// behind the bundled experiments and the CLI name "builtin8".
inline const GolayPair& builtin8() {
    static const GolayPair pair{UnimodularSequence::from_signs("++-++++-"),
                                UnimodularSequence::from_signs("--+-+++-")};
    return pair;
}

enum class ExpansionMethod { concatenate, interleave };

// Length-doubling constructions: from a Golay pair (a, b) of length L,
//   concatenate -> (a||b, a||-b)
//   interleave  -> (a0 b0 a1 b1 ..., a0 -b0 a1 -b1 ...)
// Both outputs are Golay pairs of length 2L. Input is validated.
inline GolayPair golay_expand(const GolayPair& pair, ExpansionMethod method) {
    if (pair.a.length() != pair.b.length() || !is_golay(pair.a, pair.b))
        throw std::invalid_argument("golay_expand: input is not a valid Golay pair");
    const std::size_t L = pair.a.length();
    std::vector<int> c, d;
    c.reserve(2 * L);
    d.reserve(2 * L);
    switch (method) {
        case ExpansionMethod::concatenate:
            for (std::size_t i = 0; i < L; ++i) c.push_back(pair.a[i]);
            for (std::size_t i = 0; i < L; ++i) c.push_back(pair.b[i]);
            for (std::size_t i = 0; i < L; ++i) d.push_back(pair.a[i]);
            for (std::size_t i = 0; i < L; ++i) d.push_back(-pair.b[i]);
            break;
        case ExpansionMethod::interleave:
            for (std::size_t i = 0; i < L; ++i) {
                c.push_back(pair.a[i]);
                c.push_back(pair.b[i]);
                d.push_back(pair.a[i]);
                d.push_back(-pair.b[i]);
            }
            break;
        default:
            throw std::invalid_argument("golay_expand: unknown method");
    }
    return GolayPair{UnimodularSequence(std::move(c)), UnimodularSequence(std::move(d))};
}

// ---------------------------------------------------------------------------
// Prouhet-Thue-Morse sequence and the equal-power-sum partition it induces.

class PtmBits {
public:
    explicit PtmBits(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

    std::size_t size() const { return bits_.size(); }
    int operator[](std::size_t i) const { return bits_[i]; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }

    bool operator==(const PtmBits&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

// First n bits of the Thue-Morse sequence: s_0 = 0, s_{2k} = s_k,
// s_{2k+1} = 1 - s_k. The recursion is prefix-stable, so any n >= 1 is
// accepted, not just powers of two.
inline PtmBits ptm(std::size_t n) {
    if (n == 0) throw std::invalid_argument("ptm: n must be >= 1");
    if (n > (std::size_t{1} << 24)) throw std::invalid_argument("ptm: n too large");
    std::vector<std::uint8_t> bits(n, 0);
    for (std::size_t k = 1; k < n; ++k)
        bits[k] = (k % 2 == 0) ? bits[k / 2] : static_cast<std::uint8_t>(1 - bits[k / 2]);
    return PtmBits(std::move(bits));
}

// Split of {0, ..., 2^(M+1)-1} into the Thue-Morse zero set s0 and one set
// s1. The two halves have equal m-th power sums for every 0 <= m <= M.
struct ProuhetPartition {
    unsigned order = 0; // M
    std::vector<std::int64_t> s0;
    std::vector<std::int64_t> s1;
};

inline ProuhetPartition prouhet_partition(unsigned M) {
    if (M > 20) throw std::invalid_argument("prouhet_partition: order too large");
    const std::size_t n = std::size_t{1} << (M + 1);
    const PtmBits bits = ptm(n);
    ProuhetPartition part;
    part.order = M;
    part.s0.reserve(n / 2);
    part.s1.reserve(n / 2);
    for (std::size_t k = 0; k < n; ++k)
        (bits[k] == 0 ? part.s0 : part.s1).push_back(static_cast<std::int64_t>(k));
    return part;
}

// b^e with overflow detection; throws rather than wrapping.
inline std::int64_t checked_pow_i64(std::int64_t base, unsigned exp) {
    std::int64_t r = 1;
    for (unsigned i = 0; i < exp; ++i)
        if (__builtin_mul_overflow(r, base, &r))
            throw std::overflow_error("checked_pow_i64: overflow");
    return r;
}

inline std::int64_t power_sum(std::span<const std::int64_t> xs, unsigned m) {
    std::int64_t acc = 0;
    for (std::int64_t x : xs)
        if (__builtin_add_overflow(acc, checked_pow_i64(x, m), &acc))
            throw std::overflow_error("power_sum: overflow");
    return acc;
}

} // namespace dopwave
