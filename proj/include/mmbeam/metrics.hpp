#pragma once

#include "mmbeam/linalg.hpp"

namespace mmbeam {

struct LinkBudget {
    double power = 1.0;      // P, linear
    double noise_var = 1.0;  // sigma_n^2, linear
    int n_streams = 1;
};

enum class RateUnit { Bits, Nats };

/// log2 det(I + (P/N_s) R_n^{-1} W^H h F F^H h^H W) with R_n = sigma^2 W^H W,
/// evaluated against the Cholesky factor of R_n rather than an explicit
/// inverse. Throws SingularCombiner when W^H W is singular within 1e-12.
double spectral_efficiency(const cxmat& h, const cxmat& f, const cxmat& w,
                           const LinkBudget& budget);

/// Per-stream SINR gamma_k over the combined precoder/combiner columns.
/// Throws ZeroCombinerColumn when a combiner column has norm < 1e-12.
realvec per_stream_sinr(const cxmat& h, const cxmat& f, const cxmat& w, const LinkBudget& budget);

/// Sum over streams of log(1 + gamma_k), base-2 by default.
double sum_rate(const realvec& gammas, RateUnit unit = RateUnit::Bits);

/// Capacity of h at total power P with water-filling across singular modes;
/// upper bound on any design's spectral efficiency.
double waterfilling_capacity(const cxmat& h, const LinkBudget& budget);

}  // namespace mmbeam
