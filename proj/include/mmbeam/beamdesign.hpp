#pragma once

#include <vector>

#include "mmbeam/codebook.hpp"
#include "mmbeam/linalg.hpp"
#include "mmbeam/metrics.hpp"

namespace mmbeam {

// Hybrid precoder/combiner factorization. Analog columns are codebook beams
// at the recorded indices; f_rf*f_bb carries total power N_s; w_bb has
// orthonormal columns. p_basis/q_basis hold the orthonormalized transmit and
// receive directions accumulated by the successive selection (empty for
// designs that do not deflate).
struct HybridDesign {
    cxmat f_rf;  // N_t x N_s
    cxmat f_bb;  // N_s x N_s
    cxmat w_rf;  // N_r x N_s
    cxmat w_bb;  // N_s x N_s
    std::vector<int> tx_indices;
    std::vector<int> rx_indices;
    cxmat p_basis;  // N_t x k, orthonormal columns
    cxmat q_basis;  // N_r x k, orthonormal columns

    cxmat combined_precoder() const { return f_rf * f_bb; }
    cxmat combined_combiner() const { return w_rf * w_bb; }
};

struct FullDigitalDesign {
    cxmat f;  // N_t x N_s, ||f||_F^2 = N_s
    cxmat w;  // N_r x N_s, orthonormal columns
};

struct PairSelection {
    int f_index = 0;
    int w_index = 0;
    double gain = 0.0;
};

/// Best analog pair over the codebook product: argmax |w^H h_tilde f|, ties
/// broken by smallest (w_index, f_index). Throws DegenerateChannel when the
/// maximum gain falls below 1e-12.
PairSelection select_pair(const cxmat& h_tilde, const Codebook& f_cb, const Codebook& w_cb);

/// Unit-norm component of v orthogonal to the orthonormal columns of basis:
/// (v - sum_i (b_i^H v) b_i) / ||.||. Throws SpanCollapse when the residual
/// norm is below 1e-10.
cxvec orthonormal_residual(const cxvec& v, const cxmat& basis);

/// (I - q q^H) h_tilde (I - p p^H) for unit vectors p, q.
cxmat deflate(const cxmat& h_tilde, const cxvec& p, const cxvec& q);

/// Successive joint analog pair selection with deflation, followed by the
/// SVD baseband stage on H_eff = W_RF^H h F_RF and baseband power
/// normalization.
HybridDesign joint_design(const cxmat& h, const Codebook& f_cb, const Codebook& w_cb,
                          int n_streams);

/// Unconstrained benchmark: leading singular vectors of h with equal
/// per-stream power. Throws RankDeficient when rank(h) < n_streams.
FullDigitalDesign full_digital_svd(const cxmat& h, int n_streams);

/// Ablation baseline: N_s largest entries of |W^H h F| under physically
/// distinct beams per side (which implies distinct row and column indices),
/// no deflation between picks; same baseband stage as joint_design.
HybridDesign greedy_no_deflation(const cxmat& h, const Codebook& f_cb, const Codebook& w_cb,
                                 int n_streams);

struct ExhaustiveResult {
    HybridDesign design;
    double sum_rate = 0.0;
};

/// Exact solver of the analog selection problem for tiny instances: sum-rate
/// maximization over all unordered beam subsets, with the same SVD baseband
/// stage. Throws InstanceTooLarge when C(|F|,N_s) C(|W|,N_s) N_s! > 1e6.
ExhaustiveResult exhaustive_joint_search(const cxmat& h, const Codebook& f_cb,
                                         const Codebook& w_cb, int n_streams, double power,
                                         double noise_var);

}  // namespace mmbeam
