#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mmbeam/linalg.hpp"
#include "mmbeam/random.hpp"

namespace mmbeam {

struct ArrayConfig {
    int n_elements = 1;
    double spacing_over_wavelength = 0.5;
};

enum class PowerProfile { Uniform, Exponential07 };

// Half-open angle interval [start, start + width), radians.
struct AngleInterval {
    double start = 0.0;
    double width = 0.0;
};

struct ChannelParams {
    ArrayConfig tx;
    ArrayConfig rx;
    int n_clusters = 10;
    int n_rays = 10;
    // Standard deviation of the per-ray Laplacian angle spread, radians.
    double angle_spread_rad = 2.5 * std::numbers::pi / 180.0;
    AngleInterval aod_mean_range{0.0, 2.0 * std::numbers::pi};
    // Mean cluster arrival angles fall in a sector of this width. When
    // aoa_sector_start is unset, the sector start is drawn uniformly in
    // [0, 2pi) once per realization.
    double aoa_sector_width = std::numbers::pi / 3.0;
    std::optional<double> aoa_sector_start;
    PowerProfile power_profile = PowerProfile::Exponential07;
};

struct Ray {
    int cluster = 0;  // 1-based cluster index
    cxd gain;
    double aod = 0.0;
    double aoa = 0.0;
};

struct ChannelRealization {
    cxmat h;  // n_rx x n_tx
    std::vector<Ray> rays;
};

/// Unit-norm steering vector: entry k = (1/sqrt(N)) exp(j 2pi (d/lambda) k sin(theta)).
cxvec ula_response(const ArrayConfig& cfg, double theta_rad);

/// Per-cluster average powers summing to n_clusters.
/// Exponential07 decays with ratio 0.7 between consecutive clusters.
std::vector<double> cluster_powers(int n_clusters, PowerProfile profile);

/// One Laplace(location = mean, scale = std_dev/sqrt(2)) draw via inverse CDF.
double sample_laplacian_angle(double mean, double std_dev, RandomStream& rng);

/// Channel matrix rebuilt from an explicit ray list; also the test hook for
/// pinning gains and angles. n_clusters/n_rays fix the power normalization.
cxmat assemble_channel(const ArrayConfig& tx, const ArrayConfig& rx, std::span<const Ray> rays,
                       int n_clusters, int n_rays);

ChannelRealization sample_channel(const ChannelParams& params, RandomStream& rng);

}  // namespace mmbeam
