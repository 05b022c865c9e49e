#pragma once

// Composite and matrix-valued ambiguity functions on the integer delay /
// Doppler grid, their Taylor coefficients about zero Doppler, and the
// sidelobe metrics built on them.
//
// The composite ambiguity of a train is sum_n e^{j n theta} autocorr(x_n);
// for the Alamouti matrix the diagonal entry equals that same sum and the
// off-diagonal entry is sum_k (e^{j2k theta} - e^{j(2k+1) theta})
// xcorr(x_2k, x_2k+1). Taylor coefficients are computed exactly over the
// integers; the j^m/m! factor of the exponential series is deliberately not
// folded in (only where each coefficient vanishes matters), so the true
// series term of order m is (j theta)^m / m! times the value returned here.

#include "dopwave/trains.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace dopwave {

namespace detail {

// Dense complex accumulator over the fixed lag span [-(L-1), L-1].
class LagAccumulator {
public:
    explicit LagAccumulator(std::size_t length)
        : min_lag_(-(static_cast<int>(length) - 1)),
          coeffs_(2 * length - 1, std::complex<double>{}) {}

    void add(const IntPoly& p, std::complex<double> weight) {
        for (int k = p.min_degree(); k <= p.max_degree(); ++k)
            coeffs_[static_cast<std::size_t>(k - min_lag_)] +=
                weight * static_cast<double>(p.coeff(k));
    }

    ComplexPoly take() { return ComplexPoly(min_lag_, std::move(coeffs_)); }

private:
    int min_lag_;
    std::vector<std::complex<double>> coeffs_;
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("taylor coefficient overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("taylor coefficient overflow");
    return r;
}

// Integer-exact weighted sum of correlation polynomials.
template <class WeightAt, class PolyAt>
IntPoly weighted_poly_sum(std::size_t terms, std::size_t length, WeightAt&& weight, PolyAt&& poly) {
    const int min_lag = -(static_cast<int>(length) - 1);
    std::vector<std::int64_t> coeffs(2 * length - 1, 0);
    for (std::size_t i = 0; i < terms; ++i) {
        const std::int64_t w = weight(i);
        if (w == 0) continue;
        const IntPoly p = poly(i);
        for (int k = p.min_degree(); k <= p.max_degree(); ++k) {
            auto& slot = coeffs[static_cast<std::size_t>(k - min_lag)];
            slot = checked_add(slot, checked_mul(w, p.coeff(k)));
        }
    }
    return IntPoly(min_lag, std::move(coeffs));
}

} // namespace detail

// Doppler-weighted sum of per-pulse autocorrelations, as a complex Laurent
// polynomial in the delay operator. At theta = 0 a Golay-paired train gives
// exactly N*L at lag zero and zero elsewhere.
inline ComplexPoly composite_ambiguity(const PulseTrain& train, DopplerSpec theta) {
    require_finite(theta, "composite_ambiguity");
    detail::LagAccumulator acc(train.length());
    for (std::size_t n = 0; n < train.size(); ++n)
        acc.add(autocorr(train.pulse(n)),
                std::polar(1.0, static_cast<double>(n) * theta.radians_per_pri));
    return acc.take();
}

// Zero-order Taylor coefficient of the composite ambiguity: the constant
// N*L at lag zero.
inline IntPoly ambiguity_taylor_order0(const PulseTrain& train) {
    return IntPoly::monomial(static_cast<std::int64_t>(train.size()) *
                             static_cast<std::int64_t>(train.length()));
}

// Order-m Taylor coefficient (m >= 1) of the composite ambiguity about zero
// Doppler, up to the j^m/m! series factor: sum_n n^m autocorr(x_n).
// Integer-exact.
inline IntPoly ambiguity_taylor(const PulseTrain& train, unsigned m) {
    if (m < 1) throw std::invalid_argument("ambiguity_taylor: order must be >= 1 (order 0 is the N*L constant)");
    return detail::weighted_poly_sum(
        train.size(), train.length(),
        [m](std::size_t n) { return checked_pow_i64(static_cast<std::int64_t>(n), m); },
        [&](std::size_t n) { return autocorr(train.pulse(n)); });
}

// Order-m Taylor coefficient (m >= 1) of the off-diagonal matrix ambiguity
// entry: sum_k ((2k)^m - (2k+1)^m) xcorr(x_2k, x_2k+1). The order-0 term is
// identically zero. Integer-exact.
inline IntPoly offdiag_taylor(const WaveformMatrix& wm, unsigned m) {
    if (m < 1) throw std::invalid_argument("offdiag_taylor: order must be >= 1 (order 0 vanishes)");
    const PulseTrain& train = wm.train();
    return detail::weighted_poly_sum(
        wm.blocks(), wm.length(),
        [m](std::size_t k) {
            const auto even = checked_pow_i64(2 * static_cast<std::int64_t>(k), m);
            const auto odd = checked_pow_i64(2 * static_cast<std::int64_t>(k) + 1, m);
            return detail::checked_add(even, -odd);
        },
        [&](std::size_t k) { return xcorr(train.pulse(2 * k), train.pulse(2 * k + 1)); });
}

// The 2x2 lag-polynomial ambiguity of an Alamouti matrix train,
//     ( diag     offdiag )
//     ( offdiag~ diag    )
// with diag the composite ambiguity of the underlying train and offdiag the
// Doppler-weighted sum of within-pair cross-correlations. At theta = 0 this
// is N*L times the identity.
struct MatrixAmbiguity {
    ComplexPoly diag;
    ComplexPoly offdiag;
    ComplexPoly offdiag_tilde;

    const ComplexPoly& entry(std::size_t row, std::size_t col) const {
        if (row > 1 || col > 1) throw std::invalid_argument("MatrixAmbiguity::entry: index out of range");
        if (row == col) return diag;
        return row == 0 ? offdiag : offdiag_tilde;
    }
};

inline MatrixAmbiguity matrix_ambiguity(const WaveformMatrix& wm, DopplerSpec theta) {
    require_finite(theta, "matrix_ambiguity");
    const PulseTrain& train = wm.train();
    detail::LagAccumulator acc(wm.length());
    for (std::size_t k = 0; k < wm.blocks(); ++k) {
        const double even_phase = 2.0 * static_cast<double>(k) * theta.radians_per_pri;
        const std::complex<double> w =
            std::polar(1.0, even_phase) - std::polar(1.0, even_phase + theta.radians_per_pri);
        acc.add(xcorr(train.pulse(2 * k), train.pulse(2 * k + 1)), w);
    }
    MatrixAmbiguity out;
    out.diag = composite_ambiguity(train, theta);
    out.offdiag = acc.take();
    out.offdiag_tilde = out.offdiag.tilde();
    return out;
}

enum class Channel { single, diag, offdiag };

inline const char* channel_name(Channel c) {
    switch (c) {
        case Channel::single: return "single";
        case Channel::diag: return "diag";
        case Channel::offdiag: return "offdiag";
    }
    return "?";
}

// Magnitudes |g_l(theta)| over the full lag range and a list of Doppler
// samples; rows are theta-major.
struct AmbiguityGrid {
    Channel channel = Channel::single;
    int min_lag = 0;
    std::size_t lag_count = 0;
    std::vector<double> thetas;
    std::vector<double> magnitudes;

    double value(std::size_t theta_index, int lag) const {
        if (theta_index >= thetas.size() || lag < min_lag ||
            lag >= min_lag + static_cast<int>(lag_count))
            throw std::invalid_argument("AmbiguityGrid::value: index out of range");
        return magnitudes[theta_index * lag_count + static_cast<std::size_t>(lag - min_lag)];
    }
};

namespace detail {

inline std::vector<double> doppler_samples(double theta_min, double theta_max, std::size_t steps) {
    if (steps == 0 || !(theta_min <= theta_max))
        throw std::invalid_argument("ambiguity_grid: empty Doppler range");
    std::vector<double> thetas(steps);
    if (steps == 1) {
        thetas[0] = theta_min;
        return thetas;
    }
    for (std::size_t i = 0; i < steps; ++i)
        thetas[i] = theta_min + (theta_max - theta_min) * static_cast<double>(i) /
                                    static_cast<double>(steps - 1);
    return thetas;
}

template <class Evaluate>
AmbiguityGrid fill_grid(Channel channel, std::size_t length, std::span<const double> thetas,
                        Evaluate&& evaluate) {
    if (thetas.empty()) throw std::invalid_argument("ambiguity_grid: empty Doppler range");
    AmbiguityGrid grid;
    grid.channel = channel;
    grid.min_lag = -(static_cast<int>(length) - 1);
    grid.lag_count = 2 * length - 1;
    grid.thetas.assign(thetas.begin(), thetas.end());
    grid.magnitudes.reserve(grid.thetas.size() * grid.lag_count);
    for (double theta : grid.thetas) {
        const ComplexPoly g = evaluate(DopplerSpec{theta});
        for (int k = grid.min_lag; k <= -grid.min_lag; ++k)
            grid.magnitudes.push_back(std::abs(g.coeff(k)));
    }
    return grid;
}

} // namespace detail

inline AmbiguityGrid ambiguity_grid(const PulseTrain& train, std::span<const double> thetas) {
    return detail::fill_grid(Channel::single, train.length(), thetas,
                             [&](DopplerSpec t) { return composite_ambiguity(train, t); });
}

inline AmbiguityGrid ambiguity_grid(const PulseTrain& train, double theta_min, double theta_max,
                                    std::size_t steps) {
    const auto thetas = detail::doppler_samples(theta_min, theta_max, steps);
    return ambiguity_grid(train, thetas);
}

inline AmbiguityGrid ambiguity_grid(const WaveformMatrix& wm, std::span<const double> thetas,
                                    Channel channel) {
    if (channel == Channel::single)
        throw std::invalid_argument("ambiguity_grid: matrix grids use the diag or offdiag channel");
    return detail::fill_grid(channel, wm.length(), thetas, [&](DopplerSpec t) {
        MatrixAmbiguity g = matrix_ambiguity(wm, t);
        return channel == Channel::diag ? std::move(g.diag) : std::move(g.offdiag);
    });
}

inline AmbiguityGrid ambiguity_grid(const WaveformMatrix& wm, double theta_min, double theta_max,
                                    std::size_t steps, Channel channel) {
    const auto thetas = detail::doppler_samples(theta_min, theta_max, steps);
    return ambiguity_grid(wm, thetas, channel);
}

// Largest coefficient magnitude over the lag axis, optionally skipping the
// lag-zero mainlobe.
inline double peak_sidelobe(const ComplexPoly& poly, bool exclude_zero_lag) {
    double peak = 0.0;
    for (int k = poly.min_degree(); k <= poly.max_degree(); ++k) {
        if (exclude_zero_lag && k == 0) continue;
        peak = std::max(peak, std::abs(poly.coeff(k)));
    }
    return peak;
}

namespace detail {

// Amplitude ratio in dB. Equal zero peaks compare as 0 dB; a zero resilient
// peak against a nonzero baseline reports +infinity.
inline double peak_ratio_db(double baseline_peak, double resilient_peak) {
    if (resilient_peak == 0.0 && baseline_peak == 0.0) return 0.0;
    if (resilient_peak == 0.0) return std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(baseline_peak / resilient_peak);
}

} // namespace detail

// Sidelobe suppression of the resilient train relative to the baseline at a
// common Doppler shift: 20 log10(baseline peak / resilient peak), with the
// lag-zero mainlobe excluded from both peaks.
inline double suppression_db(const PulseTrain& resilient, const PulseTrain& baseline,
                             DopplerSpec theta) {
    if (resilient.size() != baseline.size() || resilient.length() != baseline.length())
        throw std::invalid_argument("suppression_db: trains must share N and L");
    return detail::peak_ratio_db(peak_sidelobe(composite_ambiguity(baseline, theta), true),
                                 peak_sidelobe(composite_ambiguity(resilient, theta), true));
}

// Matrix-train variant. The diag channel excludes lag zero (the mainlobe
// sits there); the offdiag channel includes it, because the ideal
// off-diagonal entry is zero at every lag.
inline double suppression_db(const WaveformMatrix& resilient, const WaveformMatrix& baseline,
                             DopplerSpec theta, Channel channel) {
    if (resilient.columns() != baseline.columns() || resilient.length() != baseline.length())
        throw std::invalid_argument("suppression_db: matrices must share N and L");
    switch (channel) {
        case Channel::diag:
            return suppression_db(resilient.train(), baseline.train(), theta);
        case Channel::offdiag:
            return detail::peak_ratio_db(
                peak_sidelobe(matrix_ambiguity(baseline, theta).offdiag, false),
                peak_sidelobe(matrix_ambiguity(resilient, theta).offdiag, false));
        default:
            throw std::invalid_argument("suppression_db: matrix comparison uses diag or offdiag");
    }
}

} // namespace dopwave
