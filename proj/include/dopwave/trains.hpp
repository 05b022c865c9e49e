#pragma once

// Pulse trains and Alamouti waveform matrices.
//
// A train is the ordered list of waveforms x_0 ... x_{N-1} sent over N pulse
// repetition intervals; consecutive entries (x_2k, x_2k+1) form Golay pairs.
// The Thue-Morse scheduled train swaps pair roles per block so that the
// low-order Doppler Taylor coefficients of the composite ambiguity cancel;
// the conventional train repeats one pair. The matrix variant arranges the
// same pulses as 2x2 Alamouti blocks across two polarization channels.
//
// Reversed waveforms are stored as plain causal sequences. Every quantity
// computed here (autocorrelations, within-pair cross-correlations) is
// invariant under the common delay this introduces, so the stored form is
// exact.

#include "dopwave/laurent.hpp"

#include <bit>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dopwave {

// Doppler shift as phase advance per PRI, in radians.
struct DopplerSpec {
    double radians_per_pri = 0.0;
};

inline void require_finite(DopplerSpec theta, const char* where) {
    if (!std::isfinite(theta.radians_per_pri))
        throw std::invalid_argument(std::string(where) + ": Doppler shift must be finite");
}

enum class TrainScheme { ptm, conventional, custom };

class PulseTrain {
public:
    // Validated constructor: even pulse count, one common length, and every
    // consecutive pair Golay complementary.
    static PulseTrain from_pulses(std::vector<UnimodularSequence> pulses) {
        PulseTrain train = unchecked(std::move(pulses), TrainScheme::custom);
        if (train.size() % 2 != 0)
            throw std::invalid_argument("PulseTrain: pulse count must be even");
        for (std::size_t k = 0; k + 1 < train.size(); k += 2)
            if (!is_golay(train.pulse(k), train.pulse(k + 1)))
                throw std::invalid_argument("PulseTrain: consecutive pulses must form Golay pairs");
        return train;
    }

    // No pairing validation; for degenerate or deliberately broken trains.
    static PulseTrain unchecked(std::vector<UnimodularSequence> pulses,
                                TrainScheme scheme = TrainScheme::custom) {
        if (pulses.empty()) throw std::invalid_argument("PulseTrain: at least one pulse required");
        const std::size_t L = pulses.front().length();
        for (const auto& p : pulses)
            if (p.length() != L)
                throw std::invalid_argument("PulseTrain: all pulses must share one length");
        return PulseTrain(std::move(pulses), scheme);
    }

    std::size_t size() const { return pulses_.size(); }   // N
    std::size_t length() const { return pulses_.front().length(); } // L
    TrainScheme scheme() const { return scheme_; }

    const UnimodularSequence& pulse(std::size_t n) const { return pulses_[n]; }
    const std::vector<UnimodularSequence>& pulses() const { return pulses_; }

    bool operator==(const PulseTrain& other) const { return pulses_ == other.pulses_; }

private:
    PulseTrain(std::vector<UnimodularSequence> pulses, TrainScheme scheme)
        : pulses_(std::move(pulses)), scheme_(scheme) {}

    std::vector<UnimodularSequence> pulses_;
    TrainScheme scheme_;
};

namespace detail {

inline void require_golay_seed(const GolayPair& seed, const char* where) {
    if (seed.a.length() != seed.b.length() || !is_golay(seed.a, seed.b))
        throw std::invalid_argument(std::string(where) + ": seed is not a valid Golay pair");
}

inline unsigned require_block_order(unsigned M, const char* where) {
    if (M > 16) throw std::invalid_argument(std::string(where) + ": order too large");
    return M;
}

} // namespace detail

// Thue-Morse scheduled train of N = 2^(M+1) pulses. Block k carries (x, y)
// where the k-th Thue-Morse bit is 0 and (-reverse(y), reverse(x)) where it
// is 1.
inline PulseTrain ptm_train(const GolayPair& seed, unsigned M) {
    detail::require_golay_seed(seed, "ptm_train");
    detail::require_block_order(M, "ptm_train");
    const PtmBits bits = ptm(std::size_t{1} << M);
    std::vector<UnimodularSequence> pulses;
    pulses.reserve(std::size_t{2} << M);
    const UnimodularSequence alt_first = seed.b.reverse_conjugate().negated();
    const UnimodularSequence alt_second = seed.a.reverse_conjugate();
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k] == 0) {
            pulses.push_back(seed.a);
            pulses.push_back(seed.b);
        } else {
            pulses.push_back(alt_first);
            pulses.push_back(alt_second);
        }
    }
    return PulseTrain::unchecked(std::move(pulses), TrainScheme::ptm);
}

// Baseline train: the same pair repeated over all N = 2^(M+1) PRIs.
inline PulseTrain conventional_train(const GolayPair& seed, unsigned M) {
    detail::require_golay_seed(seed, "conventional_train");
    detail::require_block_order(M, "conventional_train");
    std::vector<UnimodularSequence> pulses;
    pulses.reserve(std::size_t{2} << M);
    for (std::size_t k = 0; k < (std::size_t{1} << M); ++k) {
        pulses.push_back(seed.a);
        pulses.push_back(seed.b);
    }
    return PulseTrain::unchecked(std::move(pulses), TrainScheme::conventional);
}

// Sufficient condition for the Taylor coefficients of orders 1..M to vanish
// at all nonzero delays: every pair (x_p, x_q) with p, q odd, p in the
// Thue-Morse zero set and q in the one set must be Golay complementary.
// Exhaustive exact check over those index pairs.
inline bool check_cross_pair_condition(const PulseTrain& train) {
    const std::size_t N = train.size();
    if (N < 2 || !std::has_single_bit(N))
        throw std::invalid_argument("check_cross_pair_condition: pulse count must be a power of two");
    const unsigned M = static_cast<unsigned>(std::bit_width(N) - 2);
    const ProuhetPartition part = prouhet_partition(M);
    for (std::int64_t p : part.s0) {
        if (p % 2 == 0) continue;
        for (std::int64_t q : part.s1) {
            if (q % 2 == 0) continue;
            if (!is_golay(train.pulse(static_cast<std::size_t>(p)),
                          train.pulse(static_cast<std::size_t>(q))))
                return false;
        }
    }
    return true;
}

// 2xN waveform matrix of N/2 Alamouti blocks over an underlying pulse train:
// columns (2k, 2k+1) hold
//     ( x_2k   -reverse(x_2k+1) )
//     ( x_2k+1  reverse(x_2k)   )
// The second column of each block is derived, so the train is the single
// source of truth.
class WaveformMatrix {
public:
    struct Block {
        UnimodularSequence r0c0, r0c1;
        UnimodularSequence r1c0, r1c1;
    };

    static WaveformMatrix from_train(PulseTrain train) {
        if (train.size() % 2 != 0)
            throw std::invalid_argument("WaveformMatrix: pulse count must be even");
        for (std::size_t k = 0; k + 1 < train.size(); k += 2)
            if (!is_golay(train.pulse(k), train.pulse(k + 1)))
                throw std::invalid_argument("WaveformMatrix: consecutive pulses must form Golay pairs");
        return WaveformMatrix(std::move(train));
    }

    // Skips pair validation; for loading files that the checkers will judge.
    static WaveformMatrix unchecked(PulseTrain train) {
        if (train.size() % 2 != 0)
            throw std::invalid_argument("WaveformMatrix: pulse count must be even");
        return WaveformMatrix(std::move(train));
    }

    const PulseTrain& train() const { return train_; }
    std::size_t columns() const { return train_.size(); }   // N
    std::size_t blocks() const { return train_.size() / 2; }
    std::size_t length() const { return train_.length(); }  // L

    UnimodularSequence entry(std::size_t row, std::size_t column) const {
        if (row > 1 || column >= columns())
            throw std::invalid_argument("WaveformMatrix::entry: index out of range");
        const std::size_t k = column / 2;
        const bool second = column % 2 != 0;
        if (row == 0)
            return second ? train_.pulse(2 * k + 1).reverse_conjugate().negated() : train_.pulse(2 * k);
        return second ? train_.pulse(2 * k).reverse_conjugate() : train_.pulse(2 * k + 1);
    }

    Block block(std::size_t k) const {
        return Block{entry(0, 2 * k), entry(0, 2 * k + 1), entry(1, 2 * k), entry(1, 2 * k + 1)};
    }

private:
    explicit WaveformMatrix(PulseTrain train) : train_(std::move(train)) {}

    PulseTrain train_;
};

// Alamouti matrix train for the requested scheme; the ptm scheme satisfies
// both the cross-pair condition and the cross-correlation sign condition.
inline WaveformMatrix alamouti_train(const GolayPair& seed, unsigned M, TrainScheme scheme) {
    switch (scheme) {
        case TrainScheme::ptm: return WaveformMatrix::unchecked(ptm_train(seed, M));
        case TrainScheme::conventional: return WaveformMatrix::unchecked(conventional_train(seed, M));
        default:
            throw std::invalid_argument("alamouti_train: scheme must be ptm or conventional");
    }
}

// Condition for the off-diagonal Taylor coefficients of orders 1..M to
// vanish at every delay: each block's within-pair cross-correlation must
// equal the block-0 cross-correlation up to the sign (-1)^{s_k} given by the
// Thue-Morse bit s_k. Exact polynomial comparison per block.
inline bool check_cross_sign_condition(const WaveformMatrix& wm) {
    const PulseTrain& train = wm.train();
    const IntPoly base = xcorr(train.pulse(0), train.pulse(1));
    const PtmBits bits = ptm(wm.blocks());
    for (std::size_t k = 0; k < wm.blocks(); ++k) {
        const IntPoly cc = xcorr(train.pulse(2 * k), train.pulse(2 * k + 1));
        if (cc != (bits[k] == 0 ? base : -base)) return false;
    }
    return true;
}

} // namespace dopwave
