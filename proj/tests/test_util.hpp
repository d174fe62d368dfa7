#pragma once

#include "mmbeam/linalg.hpp"
#include "mmbeam/random.hpp"

namespace testutil {

inline mmbeam::cxmat random_matrix(int rows, int cols, mmbeam::RandomStream& rng) {
    mmbeam::cxmat m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            m(r, c) = rng.complex_normal(1.0);
        }
    }
    return m;
}

inline double max_abs_diff(const mmbeam::cxmat& a, const mmbeam::cxmat& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace testutil
