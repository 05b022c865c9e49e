#pragma once

// Exact two-sided (Laurent) polynomials in the delay operator z^-1.
//
// A polynomial sum_l c_l z^-l is stored as its coefficient run together with
// the exponent of z^-1 at which the run starts ("min_degree"); the exponent l
// is the delay lag, so coeff(k) is the value of the polynomial's lag-k term.
// Correlations, Doppler-weighted correlation sums and their Taylor
// coefficients all live in this representation.
//
// Two scalar kinds are used: std::int64_t for everything the waveform
// identities pin down exactly, and std::complex<double> once Doppler phases
// enter. Promotion from the integer kind is explicit (to_complex); it never
// happens silently.

#include "dopwave/sequences.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace dopwave {

namespace detail {

inline std::int64_t conj_value(std::int64_t v) { return v; }
inline std::complex<double> conj_value(const std::complex<double>& v) { return std::conj(v); }

inline double abs_value(std::int64_t v) { return std::abs(static_cast<double>(v)); }
inline double abs_value(const std::complex<double>& v) { return std::abs(v); }

} // namespace detail

template <class Coeff>
class LaurentPoly {
public:
    // Default-constructed polynomial is the canonical zero: {min_degree 0, [0]}.
    LaurentPoly() = default;

    LaurentPoly(int min_degree, std::vector<Coeff> coeffs)
        : min_degree_(min_degree), coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw std::invalid_argument("LaurentPoly: empty coefficient list");
        normalize();
    }

    static LaurentPoly zero() { return LaurentPoly(); }

    static LaurentPoly monomial(Coeff value, int degree = 0) {
        return LaurentPoly(degree, std::vector<Coeff>{value});
    }

    int min_degree() const { return min_degree_; }
    int max_degree() const { return min_degree_ + static_cast<int>(coeffs_.size()) - 1; }
    std::span<const Coeff> coefficients() const { return coeffs_; }

    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == Coeff{}; }

    // Coefficient of z^-lag; zero outside the stored span.
    Coeff coeff(int lag) const {
        if (lag < min_degree_ || lag > max_degree()) return Coeff{};
        return coeffs_[static_cast<std::size_t>(lag - min_degree_)];
    }

    // Conjugate reversal about lag zero: tilde(P)(z) = P*(1/z*).
    LaurentPoly tilde() const {
        std::vector<Coeff> rev(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            rev[i] = detail::conj_value(coeffs_[coeffs_.size() - 1 - i]);
        return LaurentPoly(-max_degree(), std::move(rev));
    }

    LaurentPoly operator-() const {
        std::vector<Coeff> neg(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) neg[i] = -coeffs_[i];
        return LaurentPoly(min_degree_, std::move(neg));
    }

    friend LaurentPoly operator+(const LaurentPoly& p, const LaurentPoly& q) {
        const int lo = std::min(p.min_degree_, q.min_degree_);
        const int hi = std::max(p.max_degree(), q.max_degree());
        std::vector<Coeff> out(static_cast<std::size_t>(hi - lo + 1), Coeff{});
        for (int k = lo; k <= hi; ++k)
            out[static_cast<std::size_t>(k - lo)] = p.coeff(k) + q.coeff(k);
        return LaurentPoly(lo, std::move(out));
    }

    friend LaurentPoly operator-(const LaurentPoly& p, const LaurentPoly& q) { return p + (-q); }

    // Formal product; lag exponents add.
    friend LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q) {
        if (p.is_zero() || q.is_zero()) return zero();
        std::vector<Coeff> out(p.coeffs_.size() + q.coeffs_.size() - 1, Coeff{});
        for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < q.coeffs_.size(); ++j)
                out[i + j] += p.coeffs_[i] * q.coeffs_[j];
        return LaurentPoly(p.min_degree_ + q.min_degree_, std::move(out));
    }

    friend LaurentPoly operator*(const LaurentPoly& p, Coeff s) {
        std::vector<Coeff> out(p.coeffs_.size());
        for (std::size_t i = 0; i < p.coeffs_.size(); ++i) out[i] = p.coeffs_[i] * s;
        return LaurentPoly(p.min_degree_, std::move(out));
    }

    friend LaurentPoly operator*(Coeff s, const LaurentPoly& p) { return p * s; }

    // Structural equality; valid because zero fringes are trimmed on
    // construction, so equal polynomials have identical representations.
    bool operator==(const LaurentPoly&) const = default;

private:
    // Trim zero coefficients at both ends; the zero polynomial collapses to
    // the canonical {0, [0]} form.
    void normalize() {
        std::size_t first = 0;
        while (first < coeffs_.size() && coeffs_[first] == Coeff{}) ++first;
        if (first == coeffs_.size()) {
            min_degree_ = 0;
            coeffs_.assign(1, Coeff{});
            return;
        }
        std::size_t last = coeffs_.size() - 1;
        while (coeffs_[last] == Coeff{}) --last;
        if (first > 0) min_degree_ += static_cast<int>(first);
        if (first > 0 || last + 1 < coeffs_.size())
            coeffs_ = std::vector<Coeff>(coeffs_.begin() + static_cast<std::ptrdiff_t>(first),
                                         coeffs_.begin() + static_cast<std::ptrdiff_t>(last + 1));
    }

    int min_degree_ = 0;
    std::vector<Coeff> coeffs_{Coeff{}};
};

using IntPoly = LaurentPoly<std::int64_t>;
using ComplexPoly = LaurentPoly<std::complex<double>>;

template <class Coeff>
inline LaurentPoly<Coeff> scale(const LaurentPoly<Coeff>& p, Coeff s) { return p * s; }

template <class Coeff>
inline LaurentPoly<Coeff> tilde(const LaurentPoly<Coeff>& p) { return p.tilde(); }

// Explicit promotion from the exact integer kind.
inline ComplexPoly to_complex(const IntPoly& p) {
    std::vector<std::complex<double>> c(p.coefficients().size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = std::complex<double>(static_cast<double>(p.coefficients()[i]), 0.0);
    return ComplexPoly(p.min_degree(), std::move(c));
}

// Largest coefficient-wise distance over the union of the two supports.
inline double max_coeff_distance(const ComplexPoly& p, const ComplexPoly& q) {
    const int lo = std::min(p.min_degree(), q.min_degree());
    const int hi = std::max(p.max_degree(), q.max_degree());
    double worst = 0.0;
    for (int k = lo; k <= hi; ++k)
        worst = std::max(worst, std::abs(p.coeff(k) - q.coeff(k)));
    return worst;
}

// z-transform of a sequence: X(z) = sum_l s[l] z^-l.
inline IntPoly ztransform(const UnimodularSequence& s) {
    std::vector<std::int64_t> c(s.length());
    for (std::size_t i = 0; i < s.length(); ++i) c[i] = s[i];
    return IntPoly(0, std::move(c));
}

// Cross-correlation as a Laurent polynomial: the coefficient at z^-k is
//   sum_l a[l+k] * b[l]
// so that xcorr(a, a) has coefficient L at lag zero, and the formal product
// A(z) * tilde(B(z)) reproduces it exactly (positive lag = first argument
// advanced).
inline IntPoly xcorr(const UnimodularSequence& a, const UnimodularSequence& b) {
    if (a.length() != b.length())
        throw std::invalid_argument("xcorr: sequences must have equal length");
    const int L = static_cast<int>(a.length());
    std::vector<std::int64_t> c(static_cast<std::size_t>(2 * L - 1), 0);
    for (int k = -(L - 1); k <= L - 1; ++k)
        c[static_cast<std::size_t>(k + L - 1)] = correlation_at(a, b, k);
    return IntPoly(-(L - 1), std::move(c));
}

inline IntPoly autocorr(const UnimodularSequence& a) { return xcorr(a, a); }

} // namespace dopwave
