#pragma once

#include <variant>

#include <Eigen/Core>

#include "geokernels/features.hpp"
#include "geokernels/kernels.hpp"

namespace geokernels {

/// y_i = f(x_i) + ε_i with ε ~ N(0, Σ) and a zero-mean GP prior on f.
struct RegressionProblem {
  PointSet train_points;
  Eigen::VectorXd targets;
  /// Scalar noise variance (Σ = s I) or a full covariance matrix.
  std::variant<double, Eigen::MatrixXd> noise = 0.0;
  /// Added to the diagonal of K + Σ. Never applied implicitly.
  double jitter = 0.0;

  /// Throws ValidationError on inconsistent sizes or a non-PSD Σ.
  void validate() const;
  Eigen::MatrixXd noise_matrix() const;
};

struct Posterior {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

/// Mean K_{*x}(K_xx + Σ)^{-1} y. Throws NumericalError if K_xx + Σ + jitter·I
/// is not numerically positive definite.
Eigen::VectorXd posterior_mean(const MaternGeometricKernel& kernel, const KernelParams& params,
                               const RegressionProblem& problem, const PointSet& xtest);

/// Covariance K_** − K_{*x}(K_xx + Σ)^{-1}K_{x*}, symmetrized.
Eigen::MatrixXd posterior_cov(const MaternGeometricKernel& kernel, const KernelParams& params,
                              const RegressionProblem& problem, const PointSet& xtest);

/// Both moments from a single factorization.
Posterior posterior(const MaternGeometricKernel& kernel, const KernelParams& params, const RegressionProblem& problem,
                    const PointSet& xtest);

/// Posterior draws at `xtest` by pathwise conditioning:
/// (f|y)(·) = f(·) + K_{·x}(K_xx + Σ)^{-1}(y − f(x) − ε), with the prior f drawn
/// jointly on train ∪ test through `features` and ε ~ N(0, Σ).
/// Returns num_samples × |xtest|.
Eigen::MatrixXd pathwise_sample(const FeatureMap& features, const MaternGeometricKernel& kernel,
                                const KernelParams& params, const RegressionProblem& problem,
                                const PointSet& xtest, const SampleSpec& spec);

}  // namespace geokernels
