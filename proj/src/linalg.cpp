#include "mmbeam/linalg.hpp"

#include <string>

#include "mmbeam/errors.hpp"

namespace mmbeam {

cxmat hermitian(const cxmat& a) {
    return a.adjoint();
}

cxmat matmul(const cxmat& a, const cxmat& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("matmul: inner dimensions " + std::to_string(a.cols()) +
                                " and " + std::to_string(b.rows()) + " differ");
    }
    return a * b;
}

SvdResult svd(const cxmat& a) {
    if (!a.allFinite()) {
        throw NonFinite("svd: input contains NaN or Inf");
    }
    Eigen::BDCSVD<cxmat> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return SvdResult{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

double frobenius_norm(const cxmat& a) {
    return a.norm();
}

}  // namespace mmbeam
