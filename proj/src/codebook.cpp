#include "mmbeam/codebook.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mmbeam/errors.hpp"
#include "mmbeam/tolerances.hpp"

namespace mmbeam {

namespace {

bool same_beam(const cxmat& mat, int i, int j) {
    return (mat.col(i) - mat.col(j)).cwiseAbs().maxCoeff() <= kTol.identical_beam;
}

}  // namespace

Codebook build_beamsteering_codebook(int bits, const ArrayConfig& cfg) {
    if (bits < 1 || bits > 16) {
        throw BitsOutOfRange("codebook: bits must be in [1, 16], got " + std::to_string(bits));
    }
    const int size = 1 << bits;
    Codebook cb;
    cb.bits = bits;
    cb.mat.resize(cfg.n_elements, size);
    cb.angles.resize(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) {
        const double angle = 2.0 * std::numbers::pi * (i + 1) / size;
        cb.angles[static_cast<std::size_t>(i)] = angle;
        cb.mat.col(i) = ula_response(cfg, angle);
    }
    return cb;
}

int distinct_beam_count(const Codebook& cb) {
    std::vector<int> representatives;
    for (int i = 0; i < cb.size(); ++i) {
        bool found = false;
        for (int r : representatives) {
            if (same_beam(cb.mat, i, r)) {
                found = true;
                break;
            }
        }
        if (!found) representatives.push_back(i);
    }
    return static_cast<int>(representatives.size());
}

Codebook dedupe_codebook(const Codebook& cb) {
    std::vector<int> keep;
    for (int i = 0; i < cb.size(); ++i) {
        bool dup = false;
        for (int r : keep) {
            if (same_beam(cb.mat, i, r)) {
                dup = true;
                break;
            }
        }
        if (!dup) keep.push_back(i);
    }
    Codebook out;
    out.bits = cb.bits;
    out.mat.resize(cb.mat.rows(), static_cast<Eigen::Index>(keep.size()));
    out.angles.resize(keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) {
        out.mat.col(static_cast<Eigen::Index>(k)) = cb.mat.col(keep[k]);
        out.angles[k] = cb.angles[static_cast<std::size_t>(keep[k])];
    }
    return out;
}

}  // namespace mmbeam
