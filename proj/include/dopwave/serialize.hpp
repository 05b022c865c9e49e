#pragma once

// JSON and CSV interchange.
//
// Sequences serialize as arrays of +1/-1 (JSON) or compact sign strings
// ("++-+" style) for file headers and the CLI. Laurent polynomials serialize
// as {min_degree, coefficients} with complex coefficients as [re, im] pairs.
// Trains carry {scheme, M, N, L, pulses}; waveform matrices add the per-block
// entries. CSV numbers use the shortest round-trip decimal form and are
// locale-independent.

#include "dopwave/ambiguity.hpp"
#include "dopwave/radarsim.hpp"
#include "dopwave/trains.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace dopwave {

using json = nlohmann::json;

inline std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

// ---------------------------------------------------------------------------
// Sequences and polynomials

inline json sequence_to_json(const UnimodularSequence& s) { return json(s.values()); }

inline UnimodularSequence sequence_from_json(const json& j) {
    if (j.is_string()) return UnimodularSequence::from_signs(j.get<std::string>());
    if (!j.is_array()) throw std::invalid_argument("sequence: expected array of +1/-1 or sign string");
    return UnimodularSequence(j.get<std::vector<int>>());
}

inline json poly_to_json(const IntPoly& p) {
    json coeffs = json::array();
    for (auto c : p.coefficients()) coeffs.push_back(c);
    return json{{"min_degree", p.min_degree()}, {"coefficients", std::move(coeffs)}};
}

inline json poly_to_json(const ComplexPoly& p) {
    json coeffs = json::array();
    for (const auto& c : p.coefficients()) coeffs.push_back(json::array({c.real(), c.imag()}));
    return json{{"min_degree", p.min_degree()}, {"coefficients", std::move(coeffs)}};
}

inline IntPoly int_poly_from_json(const json& j) {
    return IntPoly(j.at("min_degree").get<int>(),
                   j.at("coefficients").get<std::vector<std::int64_t>>());
}

inline ComplexPoly complex_poly_from_json(const json& j) {
    std::vector<std::complex<double>> coeffs;
    for (const auto& c : j.at("coefficients")) {
        if (!c.is_array() || c.size() != 2)
            throw std::invalid_argument("polynomial: complex coefficients are [re, im] pairs");
        coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
    }
    return ComplexPoly(j.at("min_degree").get<int>(), std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Trains and waveform matrices

inline std::string scheme_name(TrainScheme s) {
    switch (s) {
        case TrainScheme::ptm: return "ptm";
        case TrainScheme::conventional: return "conventional";
        case TrainScheme::custom: return "custom";
    }
    return "custom";
}

inline TrainScheme scheme_from_name(std::string_view name) {
    if (name == "ptm") return TrainScheme::ptm;
    if (name == "conventional") return TrainScheme::conventional;
    if (name == "custom") return TrainScheme::custom;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

namespace detail {

inline json train_fields(const PulseTrain& train, const std::string& scheme) {
    json pulses = json::array();
    for (const auto& p : train.pulses()) pulses.push_back(p.signs());
    json j{{"scheme", scheme},
           {"N", train.size()},
           {"L", train.length()},
           {"pulses", std::move(pulses)}};
    if (train.size() >= 2 && std::has_single_bit(train.size()))
        j["M"] = std::bit_width(train.size()) - 2;
    return j;
}

inline std::vector<UnimodularSequence> pulses_from_json(const json& j) {
    const auto& arr = j.at("pulses");
    if (!arr.is_array() || arr.empty())
        throw std::invalid_argument("file: 'pulses' must be a non-empty array");
    std::vector<UnimodularSequence> pulses;
    pulses.reserve(arr.size());
    for (const auto& p : arr) pulses.push_back(sequence_from_json(p));
    if (j.contains("N") && j.at("N").get<std::size_t>() != pulses.size())
        throw std::invalid_argument("file: 'N' does not match the pulse count");
    if (j.contains("L") && j.at("L").get<std::size_t>() != pulses.front().length())
        throw std::invalid_argument("file: 'L' does not match the pulse length");
    return pulses;
}

} // namespace detail

inline json train_to_json(const PulseTrain& train) {
    json j = detail::train_fields(train, scheme_name(train.scheme()));
    j["type"] = "pulse_train";
    return j;
}

// Structural load only (alphabet, equal lengths, N/L consistency); the
// pairing and scheduling checks are run by the callers that need them.
inline PulseTrain train_from_json(const json& j) {
    if (j.value("type", "pulse_train") != "pulse_train")
        throw std::invalid_argument("file: expected type 'pulse_train'");
    const TrainScheme scheme = scheme_from_name(j.value("scheme", "custom"));
    return PulseTrain::unchecked(detail::pulses_from_json(j), scheme);
}

inline json matrix_to_json(const WaveformMatrix& wm) {
    json j = detail::train_fields(wm.train(), "alamouti-" + scheme_name(wm.train().scheme()));
    j["type"] = "waveform_matrix";
    json blocks = json::array();
    for (std::size_t k = 0; k < wm.blocks(); ++k) {
        const auto block = wm.block(k);
        blocks.push_back(json{{"r0c0", block.r0c0.signs()},
                              {"r0c1", block.r0c1.signs()},
                              {"r1c0", block.r1c0.signs()},
                              {"r1c1", block.r1c1.signs()}});
    }
    j["blocks"] = std::move(blocks);
    return j;
}

inline WaveformMatrix matrix_from_json(const json& j) {
    if (j.value("type", "") != "waveform_matrix")
        throw std::invalid_argument("file: expected type 'waveform_matrix'");
    std::string scheme = j.value("scheme", "alamouti-custom");
    if (scheme.rfind("alamouti-", 0) == 0) scheme = scheme.substr(9);
    WaveformMatrix wm = WaveformMatrix::unchecked(
        PulseTrain::unchecked(detail::pulses_from_json(j), scheme_from_name(scheme)));
    if (j.contains("blocks")) {
        const auto& blocks = j.at("blocks");
        if (blocks.size() != wm.blocks())
            throw std::invalid_argument("file: block count does not match the pulse count");
        for (std::size_t k = 0; k < wm.blocks(); ++k) {
            const auto block = wm.block(k);
            if (blocks[k].at("r0c0").get<std::string>() != block.r0c0.signs() ||
                blocks[k].at("r0c1").get<std::string>() != block.r0c1.signs() ||
                blocks[k].at("r1c0").get<std::string>() != block.r1c0.signs() ||
                blocks[k].at("r1c1").get<std::string>() != block.r1c1.signs())
                throw std::invalid_argument("file: block entries disagree with the pulse list");
        }
    }
    return wm;
}

// ---------------------------------------------------------------------------
// CSV writers

// Long format, theta-major: lag,theta,magnitude[,channel].
inline std::string grid_to_csv(const AmbiguityGrid& grid, bool include_channel = false) {
    std::string out = include_channel ? "lag,theta,magnitude,channel\n" : "lag,theta,magnitude\n";
    for (std::size_t t = 0; t < grid.thetas.size(); ++t) {
        for (std::size_t i = 0; i < grid.lag_count; ++i) {
            const int lag = grid.min_lag + static_cast<int>(i);
            out += std::to_string(lag);
            out += ',';
            out += format_double(grid.thetas[t]);
            out += ',';
            out += format_double(grid.magnitudes[t * grid.lag_count + i]);
            if (include_channel) {
                out += ',';
                out += channel_name(grid.channel);
            }
            out += '\n';
        }
    }
    return out;
}

// Wide format for a handful of Doppler cuts: one magnitude column per theta.
inline std::string grid_to_slice_csv(const AmbiguityGrid& grid) {
    std::string out = "lag";
    for (double theta : grid.thetas) {
        out += ",theta=";
        out += format_double(theta);
    }
    out += '\n';
    for (std::size_t i = 0; i < grid.lag_count; ++i) {
        out += std::to_string(grid.min_lag + static_cast<int>(i));
        for (std::size_t t = 0; t < grid.thetas.size(); ++t) {
            out += ',';
            out += format_double(grid.magnitudes[t * grid.lag_count + i]);
        }
        out += '\n';
    }
    return out;
}

inline std::string lag_table_csv(const ComplexPoly& u) {
    std::string out = "lag,re,im,magnitude\n";
    for (int k = u.min_degree(); k <= u.max_degree(); ++k) {
        const auto v = u.coeff(k);
        out += std::to_string(k);
        out += ',';
        out += format_double(v.real());
        out += ',';
        out += format_double(v.imag());
        out += ',';
        out += format_double(std::abs(v));
        out += '\n';
    }
    return out;
}

inline std::string polarimetric_csv(const PolarimetricOutput& u) {
    std::string out = "lag,entry,re,im,magnitude\n";
    static const char* names[2][2] = {{"11", "12"}, {"21", "22"}};
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            const ComplexPoly& p = u.entry(r, c);
            for (int k = p.min_degree(); k <= p.max_degree(); ++k) {
                const auto v = p.coeff(k);
                out += std::to_string(k);
                out += ',';
                out += names[r][c];
                out += ',';
                out += format_double(v.real());
                out += ',';
                out += format_double(v.imag());
                out += ',';
                out += format_double(std::abs(v));
                out += '\n';
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Simulation scenario config

struct Scenario {
    std::string scheme;                  // ptm | conventional | alamouti-ptm | alamouti-conventional
    unsigned M = 0;
    GolayPair seed = builtin8();
    std::optional<PointTarget> target;   // single-shot synthesis
    std::optional<double> sigma_h;       // fluctuating amplitude for Monte-Carlo trials
    NoiseSpec noise;
    std::size_t trials = 0;
    std::optional<int> augmented_spacing;
    double theta_hypothesis = 0.0; // receiver Doppler compensation (polarimetric)

    bool polarimetric() const { return scheme.rfind("alamouti-", 0) == 0; }
};

inline GolayPair seed_pair_from_json(const json& j) {
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        if (name == "builtin8") return builtin8();
        throw std::invalid_argument("seed_pair: unknown built-in name '" + name + "'");
    }
    if (j.is_object())
        return make_golay_pair(sequence_from_json(j.at("a")), sequence_from_json(j.at("b")));
    throw std::invalid_argument("seed_pair: expected \"builtin8\" or {a, b}");
}

inline std::complex<double> complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    throw std::invalid_argument("expected a number or [re, im] pair");
}

inline Scenario scenario_from_json(const json& j) {
    Scenario sc;
    for (const char* field : {"scheme", "M", "seed_pair", "noise"})
        if (!j.contains(field))
            throw std::invalid_argument(std::string("scenario: missing field '") + field + "'");
    sc.scheme = j.at("scheme").get<std::string>();
    if (sc.scheme != "ptm" && sc.scheme != "conventional" && sc.scheme != "alamouti-ptm" &&
        sc.scheme != "alamouti-conventional")
        throw std::invalid_argument("scenario: unknown scheme '" + sc.scheme + "'");
    sc.M = j.at("M").get<unsigned>();
    sc.seed = seed_pair_from_json(j.at("seed_pair"));

    const auto& noise = j.at("noise");
    if (!noise.contains("sigma_w"))
        throw std::invalid_argument("scenario: missing field 'noise.sigma_w'");
    sc.noise.sigma_w = noise.at("sigma_w").get<double>();
    if (sc.noise.sigma_w < 0)
        throw std::invalid_argument("scenario: noise.sigma_w must be >= 0");
    sc.noise.seed = noise.value("seed", std::uint64_t{0});

    sc.trials = j.value("trials", std::size_t{0});
    if (j.contains("augmented_D")) sc.augmented_spacing = j.at("augmented_D").get<int>();
    sc.theta_hypothesis = j.value("theta_hypothesis", 0.0);

    if (j.contains("target") && !j.at("target").is_null()) {
        const auto& t = j.at("target");
        PointTarget target;
        target.delay_chips = t.value("d0", 0);
        target.doppler = t.value("theta", 0.0);
        if (t.contains("sigma_h")) sc.sigma_h = t.at("sigma_h").get<double>();
        if (t.contains("H"))
            target.scattering = ScatteringMatrix{complex_from_json(t.at("H").at("vv")),
                                                 complex_from_json(t.at("H").at("vh")),
                                                 complex_from_json(t.at("H").at("hv")),
                                                 complex_from_json(t.at("H").at("hh"))};
        else if (t.contains("h"))
            target.scattering = complex_from_json(t.at("h"));
        else if (!sc.sigma_h)
            throw std::invalid_argument(
                "scenario: missing field 'target.h', 'target.H' or 'target.sigma_h'");
        sc.target = target;
        if (sc.sigma_h && sc.trials == 0)
            throw std::invalid_argument("scenario: 'target.sigma_h' requires 'trials' > 0");
        if (!sc.sigma_h && sc.trials > 0)
            throw std::invalid_argument(
                "scenario: Monte-Carlo trials with a target require 'target.sigma_h'");
    }
    return sc;
}

} // namespace dopwave
