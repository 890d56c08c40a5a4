#pragma once

// Minimum-norm least squares. The unregularized path goes through an SVD
// with singular values below eps * sigma_max * max(rows, cols) truncated,
// which stays well defined for rank-deficient feature matrices (duplicate
// expansion columns, constant hidden units). The ridge path solves the
// regularized normal equations instead.

#include <algorithm>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "solarcast/errors.hpp"
#include "solarcast/types.hpp"

namespace solarcast {

template <typename Scalar>
struct LinearSystem {
    Matrix<Scalar> H; // S x L features
    Matrix<Scalar> D; // S x m targets
    Scalar ridge_lambda = Scalar(0);
};

namespace detail {

template <typename Scalar>
void check_system(const LinearSystem<Scalar>& sys) {
    if (sys.H.rows() != sys.D.rows())
        throw DimensionMismatch("feature and target row counts differ (" +
                                std::to_string(sys.H.rows()) + " vs " +
                                std::to_string(sys.D.rows()) + ")");
    if (sys.H.size() == 0 || sys.D.size() == 0) throw EmptyInput("empty linear system");
    if (!sys.H.allFinite() || !sys.D.allFinite())
        throw NonFiniteEntries("linear system contains non-finite entries");
    if (sys.ridge_lambda < Scalar(0)) throw DataError("ridge parameter must be nonnegative");
}

template <typename Scalar>
Eigen::BDCSVD<Matrix<Scalar>> thin_svd(const Matrix<Scalar>& A) {
    Eigen::BDCSVD<Matrix<Scalar>> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        throw NumericalFailure("singular value decomposition did not converge");
    return svd;
}

template <typename Scalar>
Scalar rank_cutoff(const Eigen::BDCSVD<Matrix<Scalar>>& svd, Index rows, Index cols) {
    const Scalar sigma_max = svd.singularValues().size() ? svd.singularValues()(0) : Scalar(0);
    return Eigen::NumTraits<Scalar>::epsilon() * static_cast<Scalar>(std::max(rows, cols)) *
           sigma_max;
}

} // namespace detail

/// Minimum-Frobenius-norm least-squares solution of H beta ~= D. With a
/// positive ridge parameter, returns (H^T H + lambda I)^-1 H^T D instead.
template <typename Scalar>
Matrix<Scalar> solve_min_norm(const LinearSystem<Scalar>& sys) {
    detail::check_system(sys);

    if (sys.ridge_lambda > Scalar(0)) {
        Matrix<Scalar> gram = sys.H.transpose() * sys.H;
        gram.diagonal().array() += sys.ridge_lambda;
        Eigen::LDLT<Matrix<Scalar>> ldlt(gram);
        if (ldlt.info() != Eigen::Success)
            throw NumericalFailure("ridge normal equations are not solvable");
        return ldlt.solve(sys.H.transpose() * sys.D);
    }

    const auto svd = detail::thin_svd(sys.H);
    const Scalar cutoff = detail::rank_cutoff(svd, sys.H.rows(), sys.H.cols());
    const auto& sigma = svd.singularValues();

    Matrix<Scalar> projected = svd.matrixU().transpose() * sys.D;
    for (Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > cutoff)
            projected.row(i) /= sigma(i);
        else
            projected.row(i).setZero();
    }
    return svd.matrixV() * projected;
}

/// Moore-Penrose pseudoinverse with the same singular value cutoff as
/// solve_min_norm.
template <typename Scalar>
Matrix<Scalar> pseudoinverse(const Matrix<Scalar>& A) {
    if (A.size() == 0) throw EmptyInput("empty matrix");
    if (!A.allFinite()) throw NonFiniteEntries("matrix contains non-finite entries");
    const auto svd = detail::thin_svd(A);
    const Scalar cutoff = detail::rank_cutoff(svd, A.rows(), A.cols());
    const auto& sigma = svd.singularValues();
    Vector<Scalar> inverted(sigma.size());
    for (Index i = 0; i < sigma.size(); ++i)
        inverted(i) = sigma(i) > cutoff ? Scalar(1) / sigma(i) : Scalar(0);
    return svd.matrixV() * inverted.asDiagonal() * svd.matrixU().transpose();
}

/// Frobenius norm of the residual H beta - D.
template <typename Scalar, typename Derived>
Scalar residual_norm(const LinearSystem<Scalar>& sys, const Eigen::MatrixBase<Derived>& beta) {
    if (beta.rows() != sys.H.cols() || beta.cols() != sys.D.cols())
        throw DimensionMismatch("solution shape does not match the system");
    return (sys.H * beta - sys.D).norm();
}

} // namespace solarcast
