#pragma once

// Point-target return synthesis and the matched-filter receivers.
//
// Model: a return for PRI n is h e^{j n theta} x_n delayed by d0 chips plus
// proper complex white Gaussian noise. Doppler is applied per PRI only (one
// constant phase across a pulse); there is no intra-pulse Doppler. The
// polarimetric variant drives the two rows of an Alamouti waveform matrix
// through a 2x2 scattering matrix.
//
// Noise streams are keyed per (channel, PRI), see rng.hpp; identical
// NoiseSpec seeds give bit-identical ReturnSets.

#include "dopwave/ambiguity.hpp"
#include "dopwave/rng.hpp"
#include "dopwave/trains.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace dopwave {

struct ScatteringMatrix {
    std::complex<double> vv{1.0, 0.0};
    std::complex<double> vh{0.0, 0.0};
    std::complex<double> hv{0.0, 0.0};
    std::complex<double> hh{1.0, 0.0};

    static ScatteringMatrix identity() { return {}; }

    std::complex<double> at(std::size_t row, std::size_t col) const {
        if (row == 0) return col == 0 ? vv : vh;
        return col == 0 ? hv : hh;
    }
};

// A stationary-range point target: delay in whole chips, Doppler phase per
// PRI, and either a scalar scattering coefficient (single channel) or a 2x2
// scattering matrix (polarimetric).
struct PointTarget {
    int delay_chips = 0;
    double doppler = 0.0; // radians per PRI
    std::variant<std::complex<double>, ScatteringMatrix> scattering = std::complex<double>{1.0, 0.0};
};

struct NoiseSpec {
    double sigma_w = 0.0;   // per-component std; complex variance 2 sigma_w^2
    std::uint64_t seed = 0;
};

// Per-PRI complex sample vectors on the window [0, L + d0). The window start
// is chip 0 of each PRI; a target at delay d0 peaks at lag d0 after matched
// filtering.
class ReturnSet {
public:
    ReturnSet(std::size_t channels, std::size_t pris, std::size_t window_len)
        : channels_(channels), pris_(pris), window_len_(window_len),
          samples_(channels * pris, std::vector<std::complex<double>>(window_len)) {}

    std::size_t channels() const { return channels_; }
    std::size_t pris() const { return pris_; }
    std::size_t window_len() const { return window_len_; }

    std::span<const std::complex<double>> samples(std::size_t channel, std::size_t pri) const {
        return samples_[index(channel, pri)];
    }
    std::vector<std::complex<double>>& mutable_samples(std::size_t channel, std::size_t pri) {
        return samples_[index(channel, pri)];
    }

    bool operator==(const ReturnSet&) const = default;

private:
    std::size_t index(std::size_t channel, std::size_t pri) const {
        if (channel >= channels_ || pri >= pris_)
            throw std::invalid_argument("ReturnSet: index out of range");
        return channel * pris_ + pri;
    }

    std::size_t channels_;
    std::size_t pris_;
    std::size_t window_len_;
    std::vector<std::vector<std::complex<double>>> samples_;
};

namespace detail {

inline void validate_target(const PointTarget& target, const char* where) {
    if (target.delay_chips < 0)
        throw std::invalid_argument(std::string(where) + ": delay must be >= 0 chips");
    if (!std::isfinite(target.doppler))
        throw std::invalid_argument(std::string(where) + ": Doppler must be finite");
}

inline void add_noise(std::vector<std::complex<double>>& samples, double sigma_w,
                      std::uint64_t stream_key) {
    if (sigma_w == 0.0) return;
    for (std::size_t k = 0; k < samples.size(); ++k)
        samples[k] += sigma_w * gaussian_pair(stream_key, k);
}

} // namespace detail

// Single-channel synthesis: r_n[k] = h e^{j n theta} x_n[k - d0] + w_n[k].
// Requires scalar scattering.
inline ReturnSet synthesize(const PulseTrain& train, const PointTarget& target,
                            const NoiseSpec& noise) {
    detail::validate_target(target, "synthesize");
    const auto* h = std::get_if<std::complex<double>>(&target.scattering);
    if (h == nullptr)
        throw std::invalid_argument("synthesize: single-channel trains take scalar scattering");
    const std::size_t L = train.length();
    const std::size_t window = L + static_cast<std::size_t>(target.delay_chips);
    ReturnSet returns(1, train.size(), window);
    for (std::size_t n = 0; n < train.size(); ++n) {
        auto& samples = returns.mutable_samples(0, n);
        const std::complex<double> gain =
            *h * std::polar(1.0, static_cast<double>(n) * target.doppler);
        const UnimodularSequence& pulse = train.pulse(n);
        for (std::size_t l = 0; l < L; ++l)
            samples[l + static_cast<std::size_t>(target.delay_chips)] =
                gain * static_cast<double>(pulse[l]);
        detail::add_noise(samples, noise.sigma_w, derive_stream_key(noise.seed, n));
    }
    return returns;
}

// Polarimetric synthesis over the two rows of the waveform matrix:
// r_{c,n}[k] = e^{j n theta} sum_c' H[c,c'] entry(c',n)[k - d0] + w_{c,n}[k].
// Requires matrix scattering. Noise stream id is c * N + n.
inline ReturnSet synthesize(const WaveformMatrix& wm, const PointTarget& target,
                            const NoiseSpec& noise) {
    detail::validate_target(target, "synthesize");
    const auto* H = std::get_if<ScatteringMatrix>(&target.scattering);
    if (H == nullptr)
        throw std::invalid_argument("synthesize: polarimetric synthesis takes a scattering matrix");
    const std::size_t L = wm.length();
    const std::size_t N = wm.columns();
    const std::size_t window = L + static_cast<std::size_t>(target.delay_chips);
    ReturnSet returns(2, N, window);
    for (std::size_t c = 0; c < 2; ++c) {
        for (std::size_t n = 0; n < N; ++n) {
            auto& samples = returns.mutable_samples(c, n);
            const std::complex<double> phase =
                std::polar(1.0, static_cast<double>(n) * target.doppler);
            for (std::size_t cp = 0; cp < 2; ++cp) {
                const std::complex<double> gain = phase * H->at(c, cp);
                if (gain == std::complex<double>{}) continue;
                const UnimodularSequence entry = wm.entry(cp, n);
                for (std::size_t l = 0; l < L; ++l)
                    samples[l + static_cast<std::size_t>(target.delay_chips)] +=
                        gain * static_cast<double>(entry[l]);
            }
            detail::add_noise(samples, noise.sigma_w, derive_stream_key(noise.seed, c * N + n));
        }
    }
    return returns;
}

namespace detail {

inline ComplexPoly cross_correlate(std::span<const std::complex<double>> r,
                                   std::span<const double> x) {
    const int len_r = static_cast<int>(r.size());
    const int len_x = static_cast<int>(x.size());
    const int min_lag = -(len_x - 1);
    std::vector<std::complex<double>> out(static_cast<std::size_t>(len_r - 1 - min_lag + 1));
    for (int k = min_lag; k <= len_r - 1; ++k) {
        std::complex<double> acc{};
        for (int l = 0; l < len_x; ++l) {
            const int j = l + k;
            if (j >= 0 && j < len_r) acc += r[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(l)];
        }
        out[static_cast<std::size_t>(k - min_lag)] = acc;
    }
    return ComplexPoly(min_lag, std::move(out));
}

inline std::vector<double> as_doubles(const UnimodularSequence& s) {
    std::vector<double> v(s.length());
    for (std::size_t i = 0; i < s.length(); ++i) v[i] = static_cast<double>(s[i]);
    return v;
}

} // namespace detail

// Per-PRI processing: u[k] = sum_n xcorr_k(r_n, x_n). Each return is
// correlated against its own waveform, so no cross-waveform range sidelobes
// appear. Noiseless zero-Doppler output is N*L*h at lag d0 and zero
// elsewhere.
inline ComplexPoly matched_filter(const ReturnSet& returns, const PulseTrain& train) {
    if (returns.channels() != 1 || returns.pris() != train.size() ||
        returns.window_len() < train.length())
        throw std::invalid_argument("matched_filter: returns do not match the train");
    ComplexPoly out;
    for (std::size_t n = 0; n < train.size(); ++n)
        out = out + detail::cross_correlate(returns.samples(0, n),
                                            detail::as_doubles(train.pulse(n)));
    return out;
}

// Joint processing of all PRIs: the returns and waveforms are laid out on a
// common time axis with one PRI every `pri_spacing_chips` chips and
// correlated as single long signals. Cross terms between different
// waveforms show up as sidelobe clusters within L-1 chips of nonzero
// multiples of the spacing.
inline ComplexPoly augmented_filter(const ReturnSet& returns, const PulseTrain& train,
                                    int pri_spacing_chips) {
    if (returns.channels() != 1 || returns.pris() != train.size() ||
        returns.window_len() < train.length())
        throw std::invalid_argument("augmented_filter: returns do not match the train");
    const int L = static_cast<int>(train.length());
    if (pri_spacing_chips < L)
        throw std::invalid_argument("augmented_filter: PRI spacing must be >= L chips");
    const std::size_t N = train.size();
    const std::size_t D = static_cast<std::size_t>(pri_spacing_chips);
    std::vector<std::complex<double>> r_a((N - 1) * D + returns.window_len());
    std::vector<double> x_a((N - 1) * D + train.length(), 0.0);
    for (std::size_t n = 0; n < N; ++n) {
        const auto r = returns.samples(0, n);
        for (std::size_t k = 0; k < r.size(); ++k) r_a[n * D + k] += r[k];
        const UnimodularSequence& pulse = train.pulse(n);
        for (std::size_t l = 0; l < pulse.length(); ++l)
            x_a[n * D + l] += static_cast<double>(pulse[l]);
    }
    return detail::cross_correlate(r_a, x_a);
}

// 2x2 lag-indexed receiver output for the polarimetric scheme.
struct PolarimetricOutput {
    ComplexPoly entries[2][2];

    const ComplexPoly& entry(std::size_t row, std::size_t col) const {
        if (row > 1 || col > 1)
            throw std::invalid_argument("PolarimetricOutput::entry: index out of range");
        return entries[row][col];
    }
};

// Applies the Alamouti receiver matrix after compensating an assumed Doppler
// of theta_hypothesis per PRI:
//     U(z) = R(z) D(theta_hypothesis)^H tilde-transpose(X(z)).
// With a matched hypothesis and no noise the output is N*L*H at lag d0 and
// zero at all other lags; with theta_hypothesis = 0 it is H times the
// matrix-valued ambiguity at the target's Doppler.
inline PolarimetricOutput alamouti_receive(const ReturnSet& returns, const WaveformMatrix& wm,
                                           DopplerSpec theta_hypothesis) {
    require_finite(theta_hypothesis, "alamouti_receive");
    if (returns.channels() != 2 || returns.pris() != wm.columns() ||
        returns.window_len() < wm.length())
        throw std::invalid_argument("alamouti_receive: returns do not match the waveform matrix");
    PolarimetricOutput out;
    for (std::size_t row = 0; row < 2; ++row) {
        for (std::size_t col = 0; col < 2; ++col) {
            ComplexPoly acc;
            for (std::size_t n = 0; n < wm.columns(); ++n) {
                const ComplexPoly r(0, std::vector<std::complex<double>>(
                                          returns.samples(row, n).begin(),
                                          returns.samples(row, n).end()));
                const std::complex<double> w = std::polar(
                    1.0, -static_cast<double>(n) * theta_hypothesis.radians_per_pri);
                acc = acc + (r * w) * to_complex(ztransform(wm.entry(col, n))).tilde();
            }
            out.entries[row][col] = std::move(acc);
        }
    }
    return out;
}

// Target model for detection statistics: the scattering amplitude is drawn
// fresh per trial as proper complex normal with variance 2 sigma_h^2.
struct FluctuatingTarget {
    double sigma_h = 1.0;
    int delay_chips = 0;
    double doppler = 0.0;
};

struct HypothesisStats {
    std::complex<double> mean{};
    double variance = 0.0; // complex variance E|u - mean|^2 (unbiased)
    std::size_t trials = 0;
};

// Monte-Carlo sample mean and variance of the matched-filter statistic
// u[d0]. Noise-only (no target) gives complex variance 2*N*L*sigma_w^2; a
// fluctuating target adds 2*N^2*L^2*sigma_h^2 at zero Doppler. Trial t uses
// the h stream 2t+1 and per-PRI noise keys derived from stream 2t, so
// results are independent of evaluation order.
inline HypothesisStats hypothesis_stats(std::size_t trials, const PulseTrain& train,
                                        const std::optional<FluctuatingTarget>& target,
                                        const NoiseSpec& noise) {
    if (trials < 1) throw std::invalid_argument("hypothesis_stats: trials must be >= 1");
    const std::size_t N = train.size();
    const std::size_t L = train.length();

    // Signal part of u[d0]: h * sum_n e^{j n theta} corr_0(x_n) = h * sum_n e^{j n theta} L.
    std::complex<double> signal_gain{};
    if (target) {
        for (std::size_t n = 0; n < N; ++n)
            signal_gain += std::polar(static_cast<double>(L),
                                      static_cast<double>(n) * target->doppler);
    }

    std::vector<std::complex<double>> u(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        std::complex<double> acc{};
        if (target) {
            const std::complex<double> h =
                target->sigma_h * gaussian_pair(derive_stream_key(noise.seed, 2 * t + 1), 0);
            acc = h * signal_gain;
        }
        if (noise.sigma_w > 0.0) {
            const std::uint64_t trial_key = derive_stream_key(noise.seed, 2 * t);
            for (std::size_t n = 0; n < N; ++n) {
                const std::uint64_t pri_key = derive_stream_key(trial_key, n);
                const UnimodularSequence& pulse = train.pulse(n);
                for (std::size_t l = 0; l < L; ++l)
                    acc += noise.sigma_w * gaussian_pair(pri_key, l) *
                           static_cast<double>(pulse[l]);
            }
        }
        u[t] = acc;
    }

    HypothesisStats stats;
    stats.trials = trials;
    for (const auto& v : u) stats.mean += v;
    stats.mean /= static_cast<double>(trials);
    if (trials > 1) {
        double acc = 0.0;
        for (const auto& v : u) acc += std::norm(v - stats.mean);
        stats.variance = acc / static_cast<double>(trials - 1);
    }
    return stats;
}

} // namespace dopwave
