#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace mmbeam {

// splitmix64 finalizer (Steele, Lea & Flood). Used to derive independent
// per-trial stream seeds from (base_seed, sweep_index, trial_index).
std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t derive_stream_seed(std::uint64_t base_seed, std::uint64_t sweep_index,
                                 std::uint64_t trial_index);

// Deterministic random source. All transforms (uniform, Gaussian, Laplacian)
// are implemented on top of raw 64-bit engine output so that a given seed
// yields the same draw sequence on every platform and standard library.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01();

    /// Uniform double in [lo, lo + width).
    double uniform(double lo, double width);

    /// CN(0, variance): real and imaginary parts i.i.d. N(0, variance/2).
    std::complex<double> complex_normal(double variance);

private:
    std::mt19937_64 engine_;
};

}  // namespace mmbeam
