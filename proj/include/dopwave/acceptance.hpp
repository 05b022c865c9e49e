#pragma once

// The library's acceptance suite: one entry per shipped guarantee, each
// checked at a pinned tolerance (exact integer identities wherever no
// Doppler phase enters, 1e-12 absolute for complex cross-checks, 3% for
// Monte-Carlo variances). Shared by the `accept` CLI subcommand and the
// acceptance test binary.
//
// The ambiguity cross-checks here use their own definition-level sums coded
// directly over the raw chip values, independent of the Laurent-polynomial
// machinery they validate.

#include "dopwave/radarsim.hpp"
#include "dopwave/serialize.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace dopwave::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Report {
    std::vector<CriterionResult> criteria;

    bool all_passed() const {
        for (const auto& c : criteria)
            if (!c.passed) return false;
        return true;
    }
};

namespace bf {

// Definition-level reference sums over raw chip vectors.

inline std::complex<double> corr(const std::vector<int>& a, const std::vector<int>& b, int lag) {
    std::complex<double> acc{};
    const int la = static_cast<int>(a.size());
    const int lb = static_cast<int>(b.size());
    for (int l = 0; l < lb; ++l) {
        const int j = l + lag;
        if (j >= 0 && j < la)
            acc += static_cast<double>(a[static_cast<std::size_t>(j)]) *
                   static_cast<double>(b[static_cast<std::size_t>(l)]);
    }
    return acc;
}

inline std::complex<double> composite(const std::vector<std::vector<int>>& pulses, double theta,
                                      int lag) {
    std::complex<double> acc{};
    for (std::size_t n = 0; n < pulses.size(); ++n)
        acc += std::exp(std::complex<double>(0.0, static_cast<double>(n) * theta)) *
               corr(pulses[n], pulses[n], lag);
    return acc;
}

inline std::complex<double> offdiag(const std::vector<std::vector<int>>& pulses, double theta,
                                    int lag) {
    std::complex<double> acc{};
    for (std::size_t k = 0; 2 * k + 1 < pulses.size(); ++k) {
        const auto even = std::exp(std::complex<double>(0.0, 2.0 * static_cast<double>(k) * theta));
        const auto odd =
            std::exp(std::complex<double>(0.0, (2.0 * static_cast<double>(k) + 1.0) * theta));
        acc += (even - odd) * corr(pulses[2 * k], pulses[2 * k + 1], lag);
    }
    return acc;
}

inline std::vector<std::vector<int>> chips(const PulseTrain& train) {
    std::vector<std::vector<int>> out;
    out.reserve(train.size());
    for (const auto& p : train.pulses()) out.push_back(p.values());
    return out;
}

} // namespace bf

namespace detail {

inline std::string fmt(double v) { return format_double(v); }

struct Runner {
    Report report;

    void criterion(int id, const std::string& name,
                   const std::function<bool(std::string&)>& body) {
        CriterionResult r;
        r.id = id;
        r.name = name;
        try {
            r.passed = body(r.detail);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        report.criteria.push_back(std::move(r));
    }
};

inline bool is_lag_zero_monomial(const IntPoly& p) {
    return p.min_degree() == 0 && p.max_degree() == 0 && p.coeff(0) != 0;
}

} // namespace detail

inline constexpr double kComplexTol = 1e-12;
inline constexpr double kVarianceTol = 0.03;

struct SuppressionFloor {
    double theta;
    double floor_db;
};

inline constexpr SuppressionFloor kSingleChannelFloors[] = {{0.025, 24.0}, {0.05, 28.0}, {0.075, 29.0}};
inline constexpr SuppressionFloor kOffdiagFloors[] = {{0.025, 24.0}, {0.05, 12.0}, {0.075, 5.0}};

// Runs every acceptance criterion against the given seed pair (the shipped
// default is the canonical length-8 pair).
inline Report run(const UnimodularSequence& seed_a, const UnimodularSequence& seed_b) {
    detail::Runner runner;

    runner.criterion(1, "golay-identity", [&](std::string& detail) {
        bool ok = true;
        GolayPair pair{seed_a, seed_b};
        const auto check_pair = [&](const GolayPair& p) {
            const auto sum = autocorr(p.a) + autocorr(p.b);
            const auto want = IntPoly::monomial(2 * static_cast<std::int64_t>(p.a.length()));
            return sum == want;
        };
        if (seed_a.length() != seed_b.length()) {
            detail = "seed sequences differ in length";
            return false;
        }
        ok = check_pair(pair);
        detail = "L=" + std::to_string(pair.a.length()) + (ok ? " exact" : " FAILS");
        for (auto method : {ExpansionMethod::concatenate, ExpansionMethod::interleave}) {
            GolayPair p = pair;
            for (int stage = 0; stage < 3 && ok; ++stage) {
                p = golay_expand(p, method);
                ok = ok && check_pair(p);
                detail += "; L=" + std::to_string(p.a.length()) + (ok ? " exact" : " FAILS");
            }
            if (!ok) break;
        }
        return ok;
    });

    runner.criterion(2, "prouhet-power-sums", [&](std::string& detail) {
        for (unsigned M = 0; M <= 6; ++M) {
            const auto part = prouhet_partition(M);
            for (unsigned m = 0; m <= M; ++m) {
                const auto lhs = power_sum(part.s0, m);
                const auto rhs = power_sum(part.s1, m);
                if (lhs != rhs) {
                    detail = "M=" + std::to_string(M) + " m=" + std::to_string(m) + " unequal";
                    return false;
                }
            }
        }
        detail = "orders 0..6 exact";
        return true;
    });

    runner.criterion(3, "diag-taylor-vanishing", [&](std::string& detail) {
        const GolayPair pair = make_golay_pair(seed_a, seed_b);
        const PulseTrain resilient = ptm_train(pair, 3);
        const PulseTrain baseline = conventional_train(pair, 3);
        const auto part = prouhet_partition(3);
        for (unsigned m = 1; m <= 3; ++m) {
            const IntPoly c = ambiguity_taylor(resilient, m);
            const std::int64_t expected =
                2 * power_sum(part.s0, m) * static_cast<std::int64_t>(resilient.length());
            if (!detail::is_lag_zero_monomial(c) || c.coeff(0) != expected) {
                detail = "order " + std::to_string(m) + " is not the expected lag-zero monomial";
                return false;
            }
        }
        const IntPoly c1 = ambiguity_taylor(baseline, 1);
        if (detail::is_lag_zero_monomial(c1)) {
            detail = "baseline order 1 unexpectedly vanishes off lag zero";
            return false;
        }
        detail = "orders 1..3 collapse to lag zero; baseline order 1 does not";
        return true;
    });

    runner.criterion(4, "offdiag-taylor-vanishing", [&](std::string& detail) {
        const GolayPair pair = make_golay_pair(seed_a, seed_b);
        const WaveformMatrix resilient = alamouti_train(pair, 3, TrainScheme::ptm);
        const WaveformMatrix baseline = alamouti_train(pair, 3, TrainScheme::conventional);
        for (unsigned m = 1; m <= 3; ++m) {
            if (!offdiag_taylor(resilient, m).is_zero()) {
                detail = "order " + std::to_string(m) + " is not identically zero";
                return false;
            }
        }
        if (offdiag_taylor(baseline, 1).is_zero()) {
            detail = "baseline order 1 unexpectedly vanishes";
            return false;
        }
        detail = "orders 1..3 identically zero; baseline order 1 nonzero";
        return true;
    });

    runner.criterion(5, "zero-doppler-identity", [&](std::string& detail) {
        const GolayPair pair = make_golay_pair(seed_a, seed_b);
        for (auto scheme : {TrainScheme::ptm, TrainScheme::conventional}) {
            const WaveformMatrix wm = alamouti_train(pair, 3, scheme);
            const MatrixAmbiguity g = matrix_ambiguity(wm, DopplerSpec{0.0});
            const double NL = static_cast<double>(wm.columns() * wm.length());
            if (g.diag != ComplexPoly::monomial({NL, 0.0}) || !g.offdiag.is_zero() ||
                !g.offdiag_tilde.is_zero()) {
                detail = std::string(scheme == TrainScheme::ptm ? "ptm" : "conventional") +
                         " scheme is not N*L times the identity";
                return false;
            }
        }
        detail = "both schemes equal N*L*I exactly at theta=0";
        return true;
    });

    const auto suppression_criterion = [&](std::string& detail, Channel channel,
                                           const SuppressionFloor* floors, std::size_t count) {
        const GolayPair pair = make_golay_pair(seed_a, seed_b);
        bool ok = true;
        if (channel == Channel::single) {
            const PulseTrain resilient = ptm_train(pair, 3);
            const PulseTrain baseline = conventional_train(pair, 3);
            for (std::size_t i = 0; i < count; ++i) {
                const double got = suppression_db(resilient, baseline, DopplerSpec{floors[i].theta});
                ok = ok && got >= floors[i].floor_db;
                detail += (i ? "; " : "") + std::string("theta=") + detail::fmt(floors[i].theta) +
                          ": " + detail::fmt(got) + " dB (floor " + detail::fmt(floors[i].floor_db) +
                          ")";
            }
        } else {
            const WaveformMatrix resilient = alamouti_train(pair, 3, TrainScheme::ptm);
            const WaveformMatrix baseline = alamouti_train(pair, 3, TrainScheme::conventional);
            for (std::size_t i = 0; i < count; ++i) {
                const double got =
                    suppression_db(resilient, baseline, DopplerSpec{floors[i].theta}, channel);
                ok = ok && got >= floors[i].floor_db;
                detail += (i ? "; " : "") + std::string("theta=") + detail::fmt(floors[i].theta) +
                          ": " + detail::fmt(got) + " dB (floor " + detail::fmt(floors[i].floor_db) +
                          ")";
            }
        }
        return ok;
    };

    runner.criterion(6, "suppression-single-channel", [&](std::string& detail) {
        return suppression_criterion(detail, Channel::single, kSingleChannelFloors,
                                     std::size(kSingleChannelFloors));
    });

    runner.criterion(7, "suppression-offdiag", [&](std::string& detail) {
        return suppression_criterion(detail, Channel::offdiag, kOffdiagFloors,
                                     std::size(kOffdiagFloors));
    });

    runner.criterion(8, "ambiguity-oracle-equivalence", [&](std::string& detail) {
        std::uint64_t counter = 0;
        const std::uint64_t key = 0x5EEDF00DDEADBEEFull;
        const auto rand_bits = [&] { return splitmix64_at(key, counter++); };
        double worst = 0.0;
        for (int trial = 0; trial < 25; ++trial) {
            GolayPair pair{UnimodularSequence({1}), UnimodularSequence({1})};
            const unsigned doublings = rand_bits() % 5; // L in {1, 2, 4, 8, 16}
            for (unsigned d = 0; d < doublings; ++d)
                pair = golay_expand(pair, rand_bits() % 2 ? ExpansionMethod::concatenate
                                                          : ExpansionMethod::interleave);
            const auto shuffle = [&](const UnimodularSequence& s) {
                UnimodularSequence out = rand_bits() % 2 ? s.reverse_conjugate() : s;
                return rand_bits() % 2 ? out.negated() : out;
            };
            pair = GolayPair{shuffle(pair.a), shuffle(pair.b)};
            const unsigned M = rand_bits() % 4;
            const bool use_ptm = rand_bits() % 2 != 0;
            const double theta =
                (static_cast<double>(rand_bits() >> 11) * 0x1.0p-53 - 0.5) * 0.4;

            const PulseTrain train =
                use_ptm ? ptm_train(pair, M) : conventional_train(pair, M);
            const auto chips = bf::chips(train);
            const int L = static_cast<int>(train.length());

            const ComplexPoly g = composite_ambiguity(train, DopplerSpec{theta});
            const MatrixAmbiguity gm =
                matrix_ambiguity(WaveformMatrix::unchecked(train), DopplerSpec{theta});
            for (int lag = -(L - 1); lag <= L - 1; ++lag) {
                worst = std::max(worst, std::abs(g.coeff(lag) - bf::composite(chips, theta, lag)));
                worst = std::max(worst,
                                 std::abs(gm.diag.coeff(lag) - bf::composite(chips, theta, lag)));
                worst = std::max(worst,
                                 std::abs(gm.offdiag.coeff(lag) - bf::offdiag(chips, theta, lag)));
            }
        }
        detail = "25 cases, worst |diff| = " + detail::fmt(worst);
        return worst <= kComplexTol;
    });

    runner.criterion(9, "matched-filter-identity", [&](std::string& detail) {
        const GolayPair pair = make_golay_pair(seed_a, seed_b);
        const PulseTrain train = ptm_train(pair, 3);
        const ReturnSet returns = synthesize(train, PointTarget{}, NoiseSpec{});
        const ComplexPoly u = matched_filter(returns, train);
        const double NL = static_cast<double>(train.size() * train.length());
        const double err = max_coeff_distance(u, ComplexPoly::monomial({NL, 0.0}));
        detail = "max |u - " + detail::fmt(NL) + "*delta| = " + detail::fmt(err);
        return err <= kComplexTol;
    });

    runner.criterion(10, "hypothesis-test-variances", [&](std::string& detail) {
        const GolayPair pair = make_golay_pair(seed_a, seed_b);
        const PulseTrain train = ptm_train(pair, 3);
        const double N = static_cast<double>(train.size());
        const double L = static_cast<double>(train.length());
        const std::size_t trials = 100000;

        const auto h0 = hypothesis_stats(trials, train, std::nullopt, NoiseSpec{1.0, 42});
        const double h0_expected = 2.0 * N * L;
        const double h0_err = std::abs(h0.variance - h0_expected) / h0_expected;

        const auto h1 = hypothesis_stats(trials, train, FluctuatingTarget{1.0}, NoiseSpec{1.0, 43});
        const double h1_expected = 2.0 * N * N * L * L + 2.0 * N * L;
        const double h1_err = std::abs(h1.variance - h1_expected) / h1_expected;

        detail = "H0 var " + detail::fmt(h0.variance) + " vs " + detail::fmt(h0_expected) +
                 " (rel " + detail::fmt(h0_err) + "); H1 var " + detail::fmt(h1.variance) +
                 " vs " + detail::fmt(h1_expected) + " (rel " + detail::fmt(h1_err) + ")";
        return h0_err <= kVarianceTol && h1_err <= kVarianceTol;
    });

    runner.criterion(11, "augmented-sidelobe-structure", [&](std::string& detail) {
        const GolayPair pair = make_golay_pair(seed_a, seed_b);
        const PulseTrain train = ptm_train(pair, 1);
        const int L = static_cast<int>(train.length());
        const int D = 2 * L;
        const ReturnSet returns = synthesize(train, PointTarget{}, NoiseSpec{});
        const ComplexPoly u = augmented_filter(returns, train, D);
        const double NL = static_cast<double>(train.size() * train.length());
        if (std::abs(u.coeff(0) - std::complex<double>(NL, 0.0)) > kComplexTol) {
            detail = "main peak is not N*L";
            return false;
        }
        int outside = 0;
        for (int k = u.min_degree(); k <= u.max_degree(); ++k) {
            if (std::abs(k) < L || std::abs(u.coeff(k)) <= kComplexTol) continue;
            ++outside;
            bool near_multiple = false;
            for (int mult = 1; mult < static_cast<int>(train.size()); ++mult)
                near_multiple = near_multiple || std::abs(std::abs(k) - mult * D) <= L - 1;
            if (!near_multiple) {
                detail = "sidelobe at lag " + std::to_string(k) +
                         " is not near a multiple of the PRI spacing";
                return false;
            }
        }
        detail = std::to_string(outside) +
                 " outer sidelobes, all within L-1 chips of a nonzero multiple of D=" +
                 std::to_string(D);
        return outside > 0;
    });

    return runner.report;
}

inline Report run() { return run(builtin8().a, builtin8().b); }

inline json report_to_json(const Report& report, const UnimodularSequence& seed_a,
                           const UnimodularSequence& seed_b) {
    json criteria = json::array();
    for (const auto& c : report.criteria)
        criteria.push_back(json{{"id", c.id},
                                {"name", c.name},
                                {"passed", c.passed},
                                {"detail", c.detail}});
    return json{{"seed_pair", json{{"a", seed_a.signs()}, {"b", seed_b.signs()}}},
                {"all_passed", report.all_passed()},
                {"criteria", std::move(criteria)}};
}

} // namespace dopwave::acceptance
