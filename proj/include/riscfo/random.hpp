#ifndef RISCFO_RANDOM_HPP
#define RISCFO_RANDOM_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace riscfo {

/// SplitMix64 finalizer. A bijection on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for trial `trial` of grid point `grid` under `base_seed`.
///
/// Injective in (grid, trial) for indices below 2^32: the pair is packed into
/// one word and pushed through two bijections.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint32_t grid,
                                    std::uint32_t trial) noexcept {
    const std::uint64_t packed = (static_cast<std::uint64_t>(grid) << 32) | trial;
    return splitmix64(base_seed ^ splitmix64(packed));
}

/// Seeded random stream: mt19937_64 words, 53-bit uniforms, Box-Muller normals.
///
/// Every step is fully specified (the standard fixes mt19937_64's output), so a
/// given seed reproduces the same samples on any conforming toolchain.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Circularly-symmetric complex Gaussian with E|w|^2 == variance.
    std::complex<double> complex_normal(double variance) {
        const double scale = std::sqrt(variance / 2.0);
        const double re = normal();
        const double im = normal();
        return {scale * re, scale * im};
    }

    /// Uniform unit-energy QPSK symbol (+-1 +- j)/sqrt(2).
    std::complex<double> qpsk() {
        const std::uint64_t bits = engine_();
        const double a = std::numbers::sqrt2 / 2.0;
        return {(bits & 1U) ? -a : a, (bits & 2U) ? -a : a};
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace riscfo

#endif  // RISCFO_RANDOM_HPP
