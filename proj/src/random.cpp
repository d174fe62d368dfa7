#include "mmbeam/random.hpp"

#include <cmath>
#include <numbers>

namespace mmbeam {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t base_seed, std::uint64_t sweep_index,
                                 std::uint64_t trial_index) {
    std::uint64_t x = splitmix64(base_seed);
    x = splitmix64(x ^ (sweep_index + 1) * 0x9E3779B97F4A7C15ULL);
    x = splitmix64(x ^ (trial_index + 1) * 0xBF58476D1CE4E5B9ULL);
    return x;
}

double RandomStream::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double width) {
    return lo + width * uniform01();
}

std::complex<double> RandomStream::complex_normal(double variance) {
    // Box-Muller; one pair of uniforms yields the two Gaussian components.
    double u1 = uniform01();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log1p(-u1));  // u1 in [0,1) keeps the log finite
    double phi = 2.0 * std::numbers::pi * u2;
    double sigma = std::sqrt(variance * 0.5);
    return {sigma * r * std::cos(phi), sigma * r * std::sin(phi)};
}

}  // namespace mmbeam
