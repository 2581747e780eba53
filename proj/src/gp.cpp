#include "geokernels/gp.hpp"

#include <limits>
#include <string>

#include <Eigen/Cholesky>

#include "geokernels/errors.hpp"
#include "geokernels/linalg.hpp"
#include "geokernels/random.hpp"

namespace geokernels {

void RegressionProblem::validate() const {
  const Eigen::Index n = train_points.rows();
  if (targets.size() != n) {
    throw ValidationError("regression problem has " + std::to_string(n) + " training points but " +
                          std::to_string(targets.size()) + " targets");
  }
  if (!targets.allFinite()) throw ValidationError("targets contain non-finite values");
  if (!(jitter >= 0.0) || !std::isfinite(jitter)) throw ValidationError("jitter must be finite and nonnegative");
  if (const auto* s = std::get_if<double>(&noise)) {
    if (!(*s >= 0.0) || !std::isfinite(*s)) throw ValidationError("noise variance must be finite and nonnegative");
  } else {
    const auto& cov = std::get<Eigen::MatrixXd>(noise);
    if (cov.rows() != n || cov.cols() != n) throw ValidationError("noise covariance does not match training size");
    linalg::psd_factor(cov);  // throws when not symmetric PSD
  }
}

Eigen::MatrixXd RegressionProblem::noise_matrix() const {
  const auto n = train_points.rows();
  if (const auto* s = std::get_if<double>(&noise)) return Eigen::MatrixXd::Identity(n, n) * *s;
  return std::get<Eigen::MatrixXd>(noise);
}

namespace {

// Cholesky factor of K_xx + Σ + jitter·I together with the validated training points.
struct Conditioning {
  PointSet train;
  Eigen::LLT<Eigen::MatrixXd> llt;
};

Conditioning condition(const MaternGeometricKernel& kernel, const KernelParams& params,
                       const RegressionProblem& problem) {
  problem.validate();
  Conditioning c{kernel.space().validate_points(problem.train_points), {}};
  const auto n = c.train.rows();
  if (n == 0) return c;
  Eigen::MatrixXd a = kernel.kernel_matrix(params, c.train) + problem.noise_matrix();
  a.diagonal().array() += problem.jitter;
  c.llt.compute(a);
  if (c.llt.info() != Eigen::Success || !c.llt.matrixLLT().allFinite() ||
      !(c.llt.matrixLLT().diagonal().minCoeff() > 0.0) ||
      c.llt.rcond() < std::numeric_limits<double>::epsilon()) {
    throw NumericalError("K + noise is not numerically positive definite; consider --jitter");
  }
  return c;
}

}  // namespace

Posterior posterior(const MaternGeometricKernel& kernel, const KernelParams& params, const RegressionProblem& problem,
                    const PointSet& xtest) {
  const Conditioning c = condition(kernel, params, problem);
  const PointSet test = kernel.space().validate_points(xtest);
  Posterior out;
  out.cov = kernel.kernel_matrix(params, test);
  if (c.train.rows() == 0) {
    out.mean = Eigen::VectorXd::Zero(test.rows());
    return out;
  }
  const Eigen::MatrixXd cross = kernel.kernel_matrix(params, test, c.train);
  out.mean = cross * c.llt.solve(problem.targets);
  const Eigen::MatrixXd half = c.llt.matrixL().solve(cross.transpose());
  out.cov -= half.transpose() * half;
  out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
  return out;
}

Eigen::VectorXd posterior_mean(const MaternGeometricKernel& kernel, const KernelParams& params,
                               const RegressionProblem& problem, const PointSet& xtest) {
  return posterior(kernel, params, problem, xtest).mean;
}

Eigen::MatrixXd posterior_cov(const MaternGeometricKernel& kernel, const KernelParams& params,
                              const RegressionProblem& problem, const PointSet& xtest) {
  return posterior(kernel, params, problem, xtest).cov;
}

Eigen::MatrixXd pathwise_sample(const FeatureMap& features, const MaternGeometricKernel& kernel,
                                const KernelParams& params, const RegressionProblem& problem,
                                const PointSet& xtest, const SampleSpec& spec) {
  if (spec.num_samples == 0) throw ValidationError("num_samples must be positive");
  const Conditioning c = condition(kernel, params, problem);
  const PointSet test = kernel.space().validate_points(xtest);
  const Eigen::Index n = c.train.rows();
  const Eigen::Index t = test.rows();

  PointSet joint(n + t, static_cast<Eigen::Index>(kernel.space().point_width()));
  joint.topRows(n) = c.train;
  joint.bottomRows(t) = test;
  const Eigen::MatrixXd prior = sample_prior(features, joint, spec);
  if (n == 0) return prior;

  const Eigen::MatrixXd noise_factor = linalg::psd_factor(problem.noise_matrix());
  const Eigen::MatrixXd cross = kernel.kernel_matrix(params, test, c.train);
  // Noise draws live on streams disjoint from the prior's.
  const Philox noise_root = Philox(spec.seed).split(0);
  const std::uint64_t noise_stream_base = std::uint64_t{1} << 63;

  Eigen::MatrixXd out(prior.rows(), t);
  Eigen::VectorXd z(n);
  for (Eigen::Index j = 0; j < prior.rows(); ++j) {
    Philox rng = noise_root.split(noise_stream_base + static_cast<std::uint64_t>(j));
    for (Eigen::Index i = 0; i < n; ++i) z(i) = rng.normal();
    const Eigen::VectorXd eps = noise_factor * z;
    const Eigen::VectorXd residual = problem.targets - prior.row(j).head(n).transpose() - eps;
    out.row(j) = prior.row(j).tail(t) + (cross * c.llt.solve(residual)).transpose();
  }
  return out;
}

}  // namespace geokernels
