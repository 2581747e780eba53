#include "geokernels/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "geokernels/errors.hpp"

namespace geokernels::linalg {

SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& a, Eigen::Index first, Eigen::Index count) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw DomainError("symmetric_eigen: matrix is not square");
  if (first < 0 || count < 0 || first + count > n) throw DomainError("symmetric_eigen: eigenpair range out of bounds");
  SymmetricEigen out;
  if (count == 0) {
    out.values.resize(0);
    out.vectors.resize(n, 0);
    return out;
  }
  if (!a.allFinite()) throw NumericalError("symmetric_eigen: matrix has non-finite entries");

  Eigen::MatrixXd work = a;  // dsyevr destroys its input
  lapack_int found = 0;
  Eigen::VectorXd values(n);
  Eigen::MatrixXd vectors(n, count);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(std::max<Eigen::Index>(count, 1)));
  const lapack_int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, 'V', 'I', 'L', static_cast<lapack_int>(n), work.data(), static_cast<lapack_int>(n), 0.0, 0.0,
      static_cast<lapack_int>(first + 1), static_cast<lapack_int>(first + count), 0.0, &found, values.data(),
      vectors.data(), static_cast<lapack_int>(n), support.data());
  if (info != 0 || found != count) {
    throw NumericalError("symmetric eigensolver failed (info " + std::to_string(info) + ")");
  }
  out.values = values.head(count);
  out.vectors = std::move(vectors);
  return out;
}

Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw ValidationError("covariance matrix is not square");
  if (a.size() == 0) return Eigen::MatrixXd(0, 0);
  if (!a.allFinite()) throw ValidationError("covariance matrix has non-finite entries");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ValidationError("covariance matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (a + a.transpose()));
  if (eig.info() != Eigen::Success) throw NumericalError("eigendecomposition of covariance failed");
  const double tol = 1e-10 * std::max(1.0, a.trace());
  if (eig.eigenvalues().minCoeff() < -tol) {
    throw ValidationError("covariance matrix is not positive semi-definite");
  }
  const Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * roots.asDiagonal();
}

}  // namespace geokernels::linalg
