#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace pilotadapt {

using Rng = std::mt19937_64;

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives an independent stream seed from a base seed and a list of tags
/// (epoch index, stream id, ...). Order of tags matters.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) noexcept {
    std::uint64_t s = mix64(base);
    for (auto t : tags) {
        s = mix64(s ^ mix64(t + 0x632be59bd9b4e019ULL));
    }
    return s;
}

/// Circularly-symmetric complex Gaussian sample with E|z|^2 = power.
inline std::complex<double> complex_normal(Rng& rng, double power) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double s = std::sqrt(power / 2.0);
    const double re = n(rng);
    const double im = n(rng);
    return {s * re, s * im};
}

}  // namespace pilotadapt
