#include "mmbeam/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmbeam/errors.hpp"
#include "mmbeam/tolerances.hpp"

namespace mmbeam {

namespace {

void check_budget(const LinkBudget& b) {
    if (!(b.power > 0.0) || !(b.noise_var > 0.0)) {
        throw std::invalid_argument("link budget: power and noise_var must be > 0");
    }
}

}  // namespace

double spectral_efficiency(const cxmat& h, const cxmat& f, const cxmat& w,
                           const LinkBudget& budget) {
    check_budget(budget);
    const auto n_streams = f.cols();
    const cxmat gram = w.adjoint() * w;

    Eigen::LLT<cxmat> llt(gram);
    if (llt.info() != Eigen::Success) {
        throw SingularCombiner("spectral_efficiency: W^H W is not positive definite");
    }
    const realvec diag = llt.matrixLLT().diagonal().real();
    if (diag.minCoeff() * diag.minCoeff() <= kTol.singular_gram * diag.maxCoeff() * diag.maxCoeff()) {
        throw SingularCombiner("spectral_efficiency: W^H W is singular within tolerance");
    }

    const cxmat m = w.adjoint() * h * f;  // N_s x N_s effective link
    const double gain = budget.power / (budget.noise_var * static_cast<double>(n_streams));
    // B = (P / (N_s sigma^2)) L^-1 M M^H L^-H, so R = log2 det(I + B).
    cxmat lm = llt.matrixL().solve(m);
    cxmat b = gain * lm * lm.adjoint();
    b = 0.5 * (b + b.adjoint().eval());  // strip rounding skew before factoring

    cxmat arg = cxmat::Identity(b.rows(), b.cols()) + b;
    Eigen::LLT<cxmat> arg_llt(arg);
    if (arg_llt.info() != Eigen::Success) {
        throw std::runtime_error("spectral_efficiency: log-det argument not positive definite");
    }
    const realvec arg_diag = arg_llt.matrixLLT().diagonal().real();
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < arg_diag.size(); ++i) {
        log_det += 2.0 * std::log2(arg_diag(i));
    }
    return log_det;
}

realvec per_stream_sinr(const cxmat& h, const cxmat& f, const cxmat& w, const LinkBudget& budget) {
    check_budget(budget);
    const auto n_streams = f.cols();
    const double p_per_stream = budget.power / static_cast<double>(n_streams);

    const cxmat link = w.adjoint() * h * f;  // link(k, i) = w_k^H h f_i
    realvec gammas(n_streams);
    for (Eigen::Index k = 0; k < n_streams; ++k) {
        const double wk_norm2 = w.col(k).squaredNorm();
        if (wk_norm2 < kTol.beam_gain_floor * kTol.beam_gain_floor) {
            throw ZeroCombinerColumn("per_stream_sinr: combiner column " + std::to_string(k) +
                                     " has zero norm");
        }
        double signal = p_per_stream * std::norm(link(k, k));
        double interference = 0.0;
        for (Eigen::Index i = 0; i < n_streams; ++i) {
            if (i != k) interference += p_per_stream * std::norm(link(k, i));
        }
        gammas(k) = signal / (interference + budget.noise_var * wk_norm2);
    }
    return gammas;
}

double sum_rate(const realvec& gammas, RateUnit unit) {
    double total = 0.0;
    for (Eigen::Index k = 0; k < gammas.size(); ++k) {
        if (gammas(k) < 0.0) {
            throw std::invalid_argument("sum_rate: SINR values must be >= 0");
        }
        total += unit == RateUnit::Bits ? std::log2(1.0 + gammas(k)) : std::log1p(gammas(k));
    }
    return total;
}

double waterfilling_capacity(const cxmat& h, const LinkBudget& budget) {
    check_budget(budget);
    const auto dec = svd(h);
    // Modes with inverse gain c_i = sigma^2 / s_i^2; allocate p_i = max(0, mu - c_i).
    std::vector<double> inv_gain;
    for (Eigen::Index i = 0; i < dec.s.size(); ++i) {
        const double s2 = dec.s(i) * dec.s(i);
        if (s2 > 0.0) inv_gain.push_back(budget.noise_var / s2);
    }
    if (inv_gain.empty()) {
        return 0.0;
    }
    auto allocated = [&](double mu) {
        double total = 0.0;
        for (double c : inv_gain) total += std::max(0.0, mu - c);
        return total;
    };
    double lo = inv_gain.front();  // smallest inverse gain (singular values descend)
    double hi = inv_gain.back() + budget.power;
    while (hi - lo > 1e-10 * (1.0 + hi)) {
        const double mid = 0.5 * (lo + hi);
        (allocated(mid) < budget.power ? lo : hi) = mid;
    }
    const double mu = 0.5 * (lo + hi);
    double capacity = 0.0;
    for (double c : inv_gain) {
        const double p = std::max(0.0, mu - c);
        capacity += std::log2(1.0 + p / c);
    }
    return capacity;
}

}  // namespace mmbeam
