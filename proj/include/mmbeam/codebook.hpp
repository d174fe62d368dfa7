#pragma once

#include <vector>

#include "mmbeam/channel.hpp"
#include "mmbeam/linalg.hpp"

namespace mmbeam {

// Beamsteering codebook: columns of `mat` are unit-norm steering vectors at
// the quantized angles 2pi*i/2^bits, i = 1..2^bits (stored at positions
// i-1). Immutable after construction.
struct Codebook {
    int bits = 0;
    cxmat mat;                   // n_elements x size, column j = beam j
    std::vector<double> angles;  // radians, one per column

    int size() const { return static_cast<int>(mat.cols()); }
    cxvec beam(int idx) const { return mat.col(idx); }
};

/// Throws BitsOutOfRange unless 1 <= bits <= 16.
Codebook build_beamsteering_codebook(int bits, const ArrayConfig& cfg);

/// Number of equivalence classes of beams under elementwise equality within
/// 1e-9. Duplicates arise because the steering vector depends on the angle
/// only through its sine.
int distinct_beam_count(const Codebook& cb);

/// Codebook reduced to the first representative of each duplicate class,
/// preserving order.
Codebook dedupe_codebook(const Codebook& cb);

}  // namespace mmbeam
