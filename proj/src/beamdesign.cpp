#include "mmbeam/beamdesign.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

#include "mmbeam/errors.hpp"
#include "mmbeam/tolerances.hpp"

namespace mmbeam {

namespace {

struct Candidate {
    double gain;
    int w_index;
    int f_index;
};

// Descending gain, then smallest (w, f): matches the select_pair tie-break.
bool better(const Candidate& a, const Candidate& b) {
    if (a.gain != b.gain) return a.gain > b.gain;
    return std::tie(a.w_index, a.f_index) < std::tie(b.w_index, b.f_index);
}

std::vector<Candidate> ranked_pairs(const cxmat& h_tilde, const Codebook& f_cb,
                                    const Codebook& w_cb) {
    const cxmat gains = matmul(hermitian(w_cb.mat), matmul(h_tilde, f_cb.mat));
    std::vector<Candidate> out;
    out.reserve(static_cast<std::size_t>(gains.size()));
    for (int w = 0; w < gains.rows(); ++w) {
        for (int f = 0; f < gains.cols(); ++f) {
            out.push_back({std::abs(gains(w, f)), w, f});
        }
    }
    std::sort(out.begin(), out.end(), better);
    return out;
}

bool duplicates_any_column(const cxvec& v, const cxmat& cols, int n_used) {
    for (int c = 0; c < n_used; ++c) {
        if ((cols.col(c) - v).cwiseAbs().maxCoeff() <= kTol.identical_beam) return true;
    }
    return false;
}

void check_stream_count(const cxmat& h, int n_streams) {
    if (n_streams < 1 || n_streams > std::min(h.rows(), h.cols())) {
        throw std::invalid_argument("n_streams must be in [1, min(N_t, N_r)], got " +
                                    std::to_string(n_streams));
    }
}

// SVD baseband stage shared by every hybrid construction: digital factors
// from H_eff = W_RF^H h F_RF, then baseband power normalization.
void finish_baseband(const cxmat& h, HybridDesign& d, int n_streams) {
    const cxmat h_eff = matmul(matmul(hermitian(d.w_rf), h), d.f_rf);
    const SvdResult dec = svd(h_eff);
    d.f_bb = dec.v.leftCols(n_streams);
    d.w_bb = dec.u.leftCols(n_streams);
    d.f_bb *= std::sqrt(static_cast<double>(n_streams)) /
              frobenius_norm(matmul(d.f_rf, d.f_bb));
}

}  // namespace

PairSelection select_pair(const cxmat& h_tilde, const Codebook& f_cb, const Codebook& w_cb) {
    const cxmat gains = matmul(hermitian(w_cb.mat), matmul(h_tilde, f_cb.mat));
    PairSelection best{0, 0, -1.0};
    for (int w = 0; w < gains.rows(); ++w) {
        for (int f = 0; f < gains.cols(); ++f) {
            const double g = std::abs(gains(w, f));
            if (g > best.gain) {
                best = {f, w, g};
            }
        }
    }
    if (best.gain < kTol.beam_gain_floor) {
        throw DegenerateChannel("select_pair: no codebook pair captures channel energy");
    }
    return best;
}

cxvec orthonormal_residual(const cxvec& v, const cxmat& basis) {
    cxvec residual = v;
    if (basis.cols() > 0) {
        residual -= basis * (basis.adjoint() * v);
    }
    const double norm = residual.norm();
    if (norm < kTol.span_collapse) {
        throw SpanCollapse("orthonormal_residual: vector lies in the span of the basis");
    }
    return residual / norm;
}

cxmat deflate(const cxmat& h_tilde, const cxvec& p, const cxvec& q) {
    const cxmat left = h_tilde - q * (q.adjoint() * h_tilde);
    return left - (left * p) * p.adjoint();
}

HybridDesign joint_design(const cxmat& h, const Codebook& f_cb, const Codebook& w_cb,
                          int n_streams) {
    check_stream_count(h, n_streams);
    const auto n_tx = h.cols();
    const auto n_rx = h.rows();

    HybridDesign d;
    d.f_rf.resize(n_tx, n_streams);
    d.w_rf.resize(n_rx, n_streams);
    d.p_basis.resize(n_tx, n_streams);
    d.q_basis.resize(n_rx, n_streams);

    cxmat h_tilde = h;
    for (int k = 0; k < n_streams; ++k) {
        const auto candidates = ranked_pairs(h_tilde, f_cb, w_cb);
        bool placed = false;
        for (const auto& cand : candidates) {
            if (cand.gain < kTol.beam_gain_floor) break;
            const cxvec f = f_cb.beam(cand.f_index);
            const cxvec w = w_cb.beam(cand.w_index);
            cxvec p, q;
            if (k == 0) {
                p = f;
                q = w;
            } else {
                try {
                    p = orthonormal_residual(f, d.p_basis.leftCols(k));
                    q = orthonormal_residual(w, d.q_basis.leftCols(k));
                } catch (const SpanCollapse&) {
                    // Grid aliasing can re-surface an already-used beam; fall
                    // back to the next pair in scan order. Anything else is a
                    // genuine dependency and propagates.
                    if (duplicates_any_column(f, d.f_rf, k) ||
                        duplicates_any_column(w, d.w_rf, k)) {
                        continue;
                    }
                    throw;
                }
            }
            d.f_rf.col(k) = f;
            d.w_rf.col(k) = w;
            d.tx_indices.push_back(cand.f_index);
            d.rx_indices.push_back(cand.w_index);
            d.p_basis.col(k) = p;
            d.q_basis.col(k) = q;
            h_tilde = deflate(h_tilde, p, q);
            placed = true;
            break;
        }
        if (!placed) {
            throw DegenerateChannel("joint_design: deflated channel has no energy for stream " +
                                    std::to_string(k + 1));
        }
    }
    finish_baseband(h, d, n_streams);
    return d;
}

FullDigitalDesign full_digital_svd(const cxmat& h, int n_streams) {
    check_stream_count(h, n_streams);
    const SvdResult dec = svd(h);
    const double s_max = dec.s.size() > 0 ? dec.s(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < dec.s.size(); ++i) {
        if (dec.s(i) > s_max * 1e-12 && dec.s(i) > 0.0) ++rank;
    }
    if (n_streams > rank) {
        throw RankDeficient("full_digital_svd: channel rank " + std::to_string(rank) +
                            " < n_streams " + std::to_string(n_streams));
    }
    FullDigitalDesign out;
    out.f = dec.v.leftCols(n_streams);
    out.f *= std::sqrt(static_cast<double>(n_streams)) / frobenius_norm(out.f);
    out.w = dec.u.leftCols(n_streams);
    return out;
}

HybridDesign greedy_no_deflation(const cxmat& h, const Codebook& f_cb, const Codebook& w_cb,
                                 int n_streams) {
    check_stream_count(h, n_streams);
    const auto candidates = ranked_pairs(h, f_cb, w_cb);

    HybridDesign d;
    d.f_rf.resize(h.cols(), n_streams);
    d.w_rf.resize(h.rows(), n_streams);
    d.p_basis.resize(h.cols(), 0);
    d.q_basis.resize(h.rows(), 0);

    int placed = 0;
    for (const auto& cand : candidates) {
        if (placed == n_streams || cand.gain < kTol.beam_gain_floor) break;
        const cxvec f = f_cb.beam(cand.f_index);
        const cxvec w = w_cb.beam(cand.w_index);
        // Distinct physical beams per side, not just distinct indices: grid
        // aliasing stores the same beam under several indices, and reusing
        // one would silently collapse the analog stage's rank.
        if (duplicates_any_column(f, d.f_rf, placed) ||
            duplicates_any_column(w, d.w_rf, placed)) {
            continue;
        }
        d.f_rf.col(placed) = f;
        d.w_rf.col(placed) = w;
        d.tx_indices.push_back(cand.f_index);
        d.rx_indices.push_back(cand.w_index);
        ++placed;
    }
    if (placed < n_streams) {
        throw DegenerateChannel("greedy_no_deflation: fewer than N_s nonzero distinct pairs");
    }
    finish_baseband(h, d, n_streams);
    return d;
}

ExhaustiveResult exhaustive_joint_search(const cxmat& h, const Codebook& f_cb,
                                         const Codebook& w_cb, int n_streams, double power,
                                         double noise_var) {
    check_stream_count(h, n_streams);
    if (f_cb.size() < n_streams || w_cb.size() < n_streams) {
        throw DegenerateChannel("exhaustive_joint_search: codebook smaller than N_s");
    }

    auto binomial = [](int n, int k) {
        double c = 1.0;
        for (int i = 0; i < k; ++i) c *= static_cast<double>(n - i) / (i + 1);
        return c;
    };
    double pairings = 1.0;
    for (int i = 2; i <= n_streams; ++i) pairings *= i;
    const double work = binomial(f_cb.size(), n_streams) * binomial(w_cb.size(), n_streams) *
                        pairings;
    if (!(work <= 1e6)) {
        throw InstanceTooLarge("exhaustive_joint_search: instance requires " +
                               std::to_string(work) + " evaluations (limit 1e6)");
    }

    const LinkBudget budget{power, noise_var, n_streams};

    auto first_subset = [n_streams]() {
        std::vector<int> s(static_cast<std::size_t>(n_streams));
        for (int i = 0; i < n_streams; ++i) s[static_cast<std::size_t>(i)] = i;
        return s;
    };
    auto next_subset = [n_streams](std::vector<int>& s, int limit) {
        int i = n_streams - 1;
        while (i >= 0 && s[static_cast<std::size_t>(i)] == limit - n_streams + i) --i;
        if (i < 0) return false;
        ++s[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n_streams; ++j) {
            s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
        }
        return true;
    };

    ExhaustiveResult best;
    best.sum_rate = -1.0;
    bool found = false;

    std::vector<int> f_subset = first_subset();
    do {
        std::vector<int> w_subset = first_subset();
        do {
            HybridDesign d;
            d.f_rf.resize(h.cols(), n_streams);
            d.w_rf.resize(h.rows(), n_streams);
            d.p_basis.resize(h.cols(), 0);
            d.q_basis.resize(h.rows(), 0);
            d.tx_indices = f_subset;
            d.rx_indices = w_subset;
            for (int k = 0; k < n_streams; ++k) {
                d.f_rf.col(k) = f_cb.beam(f_subset[static_cast<std::size_t>(k)]);
                d.w_rf.col(k) = w_cb.beam(w_subset[static_cast<std::size_t>(k)]);
            }
            finish_baseband(h, d, n_streams);
            const double rate =
                sum_rate(per_stream_sinr(h, d.combined_precoder(), d.combined_combiner(), budget));
            if (rate > best.sum_rate) {
                best.design = std::move(d);
                best.sum_rate = rate;
                found = true;
            }
        } while (next_subset(w_subset, w_cb.size()));
    } while (next_subset(f_subset, f_cb.size()));

    if (!found) {
        throw DegenerateChannel("exhaustive_joint_search: no evaluable subset");
    }
    return best;
}

}  // namespace mmbeam
