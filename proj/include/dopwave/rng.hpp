#pragma once

// Counter-based random numbers for reproducible simulations.
//
// The generator is the splitmix64 finalizer evaluated at an arbitrary
// position: output n of the stream keyed by `key` is
//     mix64(key + (n + 1) * 0x9E3779B97F4A7C15)
// where mix64 is the usual xor-shift/multiply finalizer. Because each output
// depends only on (key, n), any sample can be drawn at random access, trials
// can be parallelized, and identical seeds give identical results on every
// run. Substream keys are themselves generator outputs of the master seed.
//
// Gaussians come from one Box-Muller transform per complex sample; a
// "proper complex normal with variance 2 sigma^2" is realized as independent
// real and imaginary parts, each N(0, sigma^2).

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace dopwave {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

constexpr std::uint64_t splitmix64_at(std::uint64_t key, std::uint64_t n) {
    return mix64(key + (n + 1) * kGoldenGamma);
}

constexpr std::uint64_t derive_stream_key(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64_at(seed, stream);
}

// Uniform double in (0, 1]; the +1 keeps log() finite in Box-Muller.
inline double uniform_unit(std::uint64_t key, std::uint64_t n) {
    return static_cast<double>((splitmix64_at(key, n) >> 11) + 1) * 0x1.0p-53;
}

// Two independent N(0,1) variates packed as one complex value; sample index
// n consumes uniforms 2n and 2n+1 of the stream.
inline std::complex<double> gaussian_pair(std::uint64_t key, std::uint64_t n) {
    const double u1 = uniform_unit(key, 2 * n);
    const double u2 = uniform_unit(key, 2 * n + 1);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

} // namespace dopwave
