#pragma once

#include <Eigen/Core>

namespace geokernels::linalg {

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns
};

/// Eigenpairs `first`, ..., `first + count - 1` (ascending order) of a dense
/// symmetric matrix. Only the lower triangle of `a` is read.
/// Throws NumericalError if the solver does not converge.
SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& a, Eigen::Index first, Eigen::Index count);

inline SymmetricEigen lowest_eigenpairs(const Eigen::MatrixXd& a, Eigen::Index count) {
  return symmetric_eigen(a, 0, count);
}

inline SymmetricEigen highest_eigenpairs(const Eigen::MatrixXd& a, Eigen::Index count) {
  return symmetric_eigen(a, a.rows() - count, count);
}

/// Factor R with R Rᵀ = A for a symmetric positive semi-definite A, built from
/// the eigendecomposition so that singular matrices are handled. Eigenvalues
/// below -1e-10 · max(1, trace) are rejected with ValidationError.
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& a);

}  // namespace geokernels::linalg
