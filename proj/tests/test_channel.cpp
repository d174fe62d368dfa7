#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "mmbeam/channel.hpp"
#include "mmbeam/linalg.hpp"
#include "mmbeam/random.hpp"
#include "test_util.hpp"

using namespace mmbeam;
using testutil::max_abs_diff;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("ula_response at broadside") {
    const cxvec a = ula_response({4, 0.5}, 0.0);
    REQUIRE(a.size() == 4);
    for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(a(k) - cxd(0.5, 0.0)) < 1e-15);
    }
}

TEST_CASE("ula_response at endfire flips alternate elements") {
    const cxvec a = ula_response({2, 0.5}, kPi / 2.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(a(0) - cxd(inv_sqrt2, 0.0)) < 1e-12);
    CHECK(std::abs(a(1) - cxd(-inv_sqrt2, 0.0)) < 1e-12);
}

TEST_CASE("ula_response norm and per-entry modulus") {
    RandomStream rng(21);
    for (int iter = 0; iter < 200; ++iter) {
        const int n = 1 + static_cast<int>(rng.uniform(0.0, 64.0));
        const double spacing = 0.1 + rng.uniform(0.0, 1.0);
        const double theta = rng.uniform(0.0, 2.0 * kPi);
        const cxvec a = ula_response({n, spacing}, theta);
        CHECK(std::abs(a.norm() - 1.0) < 1e-12);
        const double want = 1.0 / std::sqrt(static_cast<double>(n));
        for (int k = 0; k < n; ++k) {
            CHECK(std::abs(std::abs(a(k)) - want) < 1e-12);
        }
    }
}

TEST_CASE("ula_response phase progression is linear in the element index") {
    const double spacing = 0.5;
    const double theta = 0.3;
    const cxvec a = ula_response({8, spacing}, theta);
    const double step = 2.0 * kPi * spacing * std::sin(theta);
    for (int k = 0; k < 8; ++k) {
        const cxd want = std::polar(1.0 / std::sqrt(8.0), step * k);
        CHECK(std::abs(a(k) - want) < 1e-12);
    }
}

TEST_CASE("cluster_powers single cluster") {
    const auto p = cluster_powers(1, PowerProfile::Exponential07);
    REQUIRE(p.size() == 1);
    CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cluster_powers two-cluster decay by hand") {
    const auto p = cluster_powers(2, PowerProfile::Exponential07);
    REQUIRE(p.size() == 2);
    // Independent arithmetic: weights 0.7, 0.49 rescaled to sum to 2.
    CHECK(p[0] == doctest::Approx(2.0 * 0.7 / 1.19).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(2.0 * 0.49 / 1.19).epsilon(1e-12));
}

TEST_CASE("cluster_powers uniform profile") {
    const auto p = cluster_powers(3, PowerProfile::Uniform);
    REQUIRE(p.size() == 3);
    for (double v : p) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cluster_powers sum, ratio, and monotonicity") {
    for (int n : {1, 2, 5, 10, 17}) {
        const auto p = cluster_powers(n, PowerProfile::Exponential07);
        double sum = 0.0;
        for (double v : p) sum += v;
        CHECK(sum == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
        for (std::size_t i = 1; i < p.size(); ++i) {
            CHECK(p[i] / p[i - 1] == doctest::Approx(0.7).epsilon(1e-12));
            CHECK(p[i] < p[i - 1]);
        }
    }
}

TEST_CASE("laplacian angle with zero spread returns the mean") {
    RandomStream rng(22);
    for (int i = 0; i < 10; ++i) {
        CHECK(sample_laplacian_angle(1.234, 0.0, rng) == 1.234);
    }
}

TEST_CASE("laplacian angle sample statistics") {
    RandomStream rng(23);
    const double mean = 0.7;
    const double target_sd = 0.04;
    const int n = 100000;
    std::vector<double> draws(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        draws[i] = sample_laplacian_angle(mean, target_sd, rng);
        sum += draws[i];
    }
    const double sample_mean = sum / n;
    double ss = 0.0;
    for (double d : draws) ss += (d - sample_mean) * (d - sample_mean);
    const double sample_sd = std::sqrt(ss / (n - 1));
    CHECK(std::abs(sample_sd - target_sd) / target_sd < 0.03);

    std::nth_element(draws.begin(), draws.begin() + n / 2, draws.end());
    CHECK(std::abs(draws[n / 2] - mean) < 0.01);
}

TEST_CASE("laplacian angle determinism") {
    RandomStream a(24), b(24);
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_laplacian_angle(0.0, 0.1, a) == sample_laplacian_angle(0.0, 0.1, b));
    }
}

TEST_CASE("assemble_channel single pinned ray") {
    const ArrayConfig tx{8, 0.5};
    const ArrayConfig rx{4, 0.5};
    const Ray ray{1, cxd(1.0, 0.0), 0.9, 2.1};
    const cxmat h = assemble_channel(tx, rx, std::span<const Ray>(&ray, 1), 1, 1);

    const cxvec ar = ula_response(rx, 2.1);
    const cxvec at = ula_response(tx, 0.9);
    const cxmat want = std::sqrt(32.0) * ar * at.adjoint();
    CHECK(max_abs_diff(h, want) < 1e-12);
    CHECK(std::abs(frobenius_norm(h) - std::sqrt(32.0)) < 1e-10);
}

TEST_CASE("assemble_channel is linear in the ray gains") {
    const ArrayConfig arr{4, 0.5};
    std::vector<Ray> rays = {{1, cxd(0.5, -1.0), 0.3, 1.0}, {1, cxd(-2.0, 0.25), 2.0, 4.0}};
    const cxmat whole = assemble_channel(arr, arr, rays, 1, 2);
    const cxmat part0 = assemble_channel(arr, arr, std::span<const Ray>(&rays[0], 1), 1, 2);
    const cxmat part1 = assemble_channel(arr, arr, std::span<const Ray>(&rays[1], 1), 1, 2);
    CHECK(max_abs_diff(whole, part0 + part1) < 1e-12);
}

TEST_CASE("channel energy concentrates at n_tx * n_rx") {
    ChannelParams params;
    params.tx = {8, 0.5};
    params.rx = {8, 0.5};
    RandomStream rng(25);
    const int n = 2000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto ch = sample_channel(params, rng);
        const double f = frobenius_norm(ch.h);
        sum += f * f;
    }
    const double mean = sum / n / 64.0;
    CHECK(mean > 0.97);
    CHECK(mean < 1.03);
}

TEST_CASE("channel rank bounded by the ray count") {
    ChannelParams params;
    params.tx = {16, 0.5};
    params.rx = {16, 0.5};
    params.n_clusters = 2;
    params.n_rays = 2;
    RandomStream rng(26);
    const auto ch = sample_channel(params, rng);
    const SvdResult dec = svd(ch.h);
    REQUIRE(dec.s.size() == 16);
    for (int i = 4; i < 16; ++i) {
        CHECK(dec.s(i) < 1e-10 * dec.s(0));
    }
}

TEST_CASE("stored rays reconstruct the matrix") {
    ChannelParams params;
    params.tx = {12, 0.5};
    params.rx = {6, 0.5};
    params.n_clusters = 3;
    params.n_rays = 4;
    RandomStream rng(27);
    const auto ch = sample_channel(params, rng);
    REQUIRE(ch.rays.size() == 12);
    const cxmat back =
        assemble_channel(params.tx, params.rx, ch.rays, params.n_clusters, params.n_rays);
    CHECK(max_abs_diff(back, ch.h) < 1e-10);
}

TEST_CASE("ray list labels clusters 1..N_cl in blocks") {
    ChannelParams params;
    params.tx = {4, 0.5};
    params.rx = {4, 0.5};
    params.n_clusters = 3;
    params.n_rays = 5;
    RandomStream rng(28);
    const auto ch = sample_channel(params, rng);
    REQUIRE(ch.rays.size() == 15);
    for (std::size_t i = 0; i < ch.rays.size(); ++i) {
        CHECK(ch.rays[i].cluster == static_cast<int>(i / 5) + 1);
    }
}

TEST_CASE("sample_channel determinism under a shared seed") {
    ChannelParams params;
    params.tx = {8, 0.5};
    params.rx = {8, 0.5};
    RandomStream a(29), b(29), c(30);
    const auto ha = sample_channel(params, a);
    const auto hb = sample_channel(params, b);
    CHECK(max_abs_diff(ha.h, hb.h) == 0.0);
    const auto hc = sample_channel(params, c);
    CHECK(max_abs_diff(ha.h, hc.h) > 0.0);
}

TEST_CASE("zero spread pins ray angles inside the configured ranges") {
    ChannelParams params;
    params.tx = {4, 0.5};
    params.rx = {4, 0.5};
    params.n_clusters = 8;
    params.n_rays = 3;
    params.angle_spread_rad = 0.0;
    params.aod_mean_range = {1.0, 0.5};
    params.aoa_sector_start = 4.0;
    params.aoa_sector_width = kPi / 3.0;
    RandomStream rng(31);
    const auto ch = sample_channel(params, rng);
    for (const Ray& ray : ch.rays) {
        CHECK(ray.aod >= 1.0);
        CHECK(ray.aod < 1.5);
        CHECK(ray.aoa >= 4.0);
        CHECK(ray.aoa < 4.0 + kPi / 3.0);
    }
}

TEST_CASE("rays within one cluster share their mean when spread is zero") {
    ChannelParams params;
    params.tx = {2, 0.5};
    params.rx = {2, 0.5};
    params.n_clusters = 2;
    params.n_rays = 4;
    params.angle_spread_rad = 0.0;
    RandomStream rng(32);
    const auto ch = sample_channel(params, rng);
    for (int cl = 0; cl < 2; ++cl) {
        for (int l = 1; l < 4; ++l) {
            CHECK(ch.rays[cl * 4 + l].aod == ch.rays[cl * 4].aod);
            CHECK(ch.rays[cl * 4 + l].aoa == ch.rays[cl * 4].aoa);
        }
    }
}
