#include "mmbeam/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mmbeam/errors.hpp"

namespace mmbeam {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_array(const ArrayConfig& cfg, const char* which) {
    if (cfg.n_elements < 1) {
        throw std::invalid_argument(std::string(which) + ": n_elements must be >= 1");
    }
    if (!(cfg.spacing_over_wavelength > 0.0)) {
        throw std::invalid_argument(std::string(which) + ": spacing_over_wavelength must be > 0");
    }
}

void check_params(const ChannelParams& p) {
    check_array(p.tx, "tx array");
    check_array(p.rx, "rx array");
    if (p.n_clusters < 1 || p.n_rays < 1) {
        throw std::invalid_argument("channel: cluster and ray counts must be >= 1");
    }
    if (p.angle_spread_rad < 0.0) {
        throw std::invalid_argument("channel: angle spread must be >= 0");
    }
    if (p.aod_mean_range.width < 0.0 || p.aoa_sector_width < 0.0) {
        throw std::invalid_argument("channel: angle interval widths must be >= 0");
    }
}

}  // namespace

cxvec ula_response(const ArrayConfig& cfg, double theta_rad) {
    const int n = cfg.n_elements;
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    const double phase_step = kTwoPi * cfg.spacing_over_wavelength * std::sin(theta_rad);
    cxvec a(n);
    for (int k = 0; k < n; ++k) {
        const double phi = phase_step * k;
        a(k) = cxd(amp * std::cos(phi), amp * std::sin(phi));
    }
    return a;
}

std::vector<double> cluster_powers(int n_clusters, PowerProfile profile) {
    if (n_clusters < 1) {
        throw std::invalid_argument("cluster_powers: n_clusters must be >= 1");
    }
    std::vector<double> powers(n_clusters);
    if (profile == PowerProfile::Uniform) {
        for (auto& p : powers) p = 1.0;
        return powers;
    }
    // Geometric profile c * 0.7^i, i = 1..n, with c chosen so the sum is n.
    double sum = 0.0;
    double term = 1.0;
    for (int i = 0; i < n_clusters; ++i) {
        term *= 0.7;
        powers[i] = term;
        sum += term;
    }
    const double c = static_cast<double>(n_clusters) / sum;
    for (auto& p : powers) p *= c;
    return powers;
}

double sample_laplacian_angle(double mean, double std_dev, RandomStream& rng) {
    if (std_dev < 0.0) {
        throw std::invalid_argument("sample_laplacian_angle: std_dev must be >= 0");
    }
    double u = rng.uniform01();
    if (std_dev == 0.0) {
        return mean;
    }
    if (u == 0.0) {
        u = 0x1.0p-53;  // keep the inverse CDF finite at the grid edge
    }
    const double b = std_dev / std::numbers::sqrt2;
    const double t = u - 0.5;
    const double mag = -b * std::log(1.0 - 2.0 * std::abs(t));
    return t < 0.0 ? mean - mag : mean + mag;
}

cxmat assemble_channel(const ArrayConfig& tx, const ArrayConfig& rx, std::span<const Ray> rays,
                       int n_clusters, int n_rays) {
    check_array(tx, "tx array");
    check_array(rx, "rx array");
    const auto n_paths = static_cast<Eigen::Index>(rays.size());
    const double scale = std::sqrt(static_cast<double>(tx.n_elements) * rx.n_elements /
                                   (static_cast<double>(n_clusters) * n_rays));
    cxmat ar(rx.n_elements, n_paths);
    cxmat at(tx.n_elements, n_paths);
    cxvec gains(n_paths);
    for (Eigen::Index p = 0; p < n_paths; ++p) {
        ar.col(p) = ula_response(rx, rays[p].aoa);
        at.col(p) = ula_response(tx, rays[p].aod);
        gains(p) = scale * rays[p].gain;
    }
    return ar * gains.asDiagonal() * at.adjoint();
}

ChannelRealization sample_channel(const ChannelParams& params, RandomStream& rng) {
    check_params(params);

    const double sector_start = params.aoa_sector_start
                                    ? *params.aoa_sector_start
                                    : rng.uniform(0.0, kTwoPi);

    const auto powers = cluster_powers(params.n_clusters, params.power_profile);

    ChannelRealization out;
    out.rays.reserve(static_cast<std::size_t>(params.n_clusters) * params.n_rays);
    // Draw order is fixed: per cluster the two mean angles, then per ray
    // AoD, AoA, gain. Reordering would silently change seeded outputs.
    for (int i = 0; i < params.n_clusters; ++i) {
        const double mean_aod =
            rng.uniform(params.aod_mean_range.start, params.aod_mean_range.width);
        const double mean_aoa = rng.uniform(sector_start, params.aoa_sector_width);
        for (int l = 0; l < params.n_rays; ++l) {
            Ray ray;
            ray.cluster = i + 1;
            ray.aod = sample_laplacian_angle(mean_aod, params.angle_spread_rad, rng);
            ray.aoa = sample_laplacian_angle(mean_aoa, params.angle_spread_rad, rng);
            ray.gain = rng.complex_normal(powers[static_cast<std::size_t>(i)]);
            out.rays.push_back(ray);
        }
    }
    out.h = assemble_channel(params.tx, params.rx, out.rays, params.n_clusters, params.n_rays);
    return out;
}

}  // namespace mmbeam
