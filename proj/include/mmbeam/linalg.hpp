#pragma once

#include <complex>

#include <Eigen/Dense>

namespace mmbeam {

using cxd = std::complex<double>;
using cxmat = Eigen::MatrixXcd;
using cxvec = Eigen::VectorXcd;
using realvec = Eigen::VectorXd;

/// Conjugate transpose.
cxmat hermitian(const cxmat& a);

/// Matrix product with an explicit inner-dimension check.
/// Throws DimensionMismatch when a.cols() != b.rows().
cxmat matmul(const cxmat& a, const cxmat& b);

// Economy-size decomposition a = u * s.asDiagonal() * v^H.
// u: rows x k, v: cols x k with k = min(rows, cols); s sorted descending.
struct SvdResult {
    cxmat u;
    realvec s;
    cxmat v;
};

/// Throws NonFinite when the input contains NaN or Inf.
SvdResult svd(const cxmat& a);

double frobenius_norm(const cxmat& a);

}  // namespace mmbeam
