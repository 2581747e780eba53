#include "geokernels/kernels.hpp"

#include <string>
#include <utility>

#include "geokernels/errors.hpp"

namespace geokernels {

MaternGeometricKernel::MaternGeometricKernel(std::shared_ptr<const DiscreteSpectrumSpace> space)
    : space_(std::move(space)) {
  if (!space_) throw ValidationError("kernel needs a space");
}

SpectralWeights MaternGeometricKernel::weights(const KernelParams& params) const {
  SpectralWeights w = spectral_weights(space_->levels(), params, space_->n_dim());
  w.normalization = normalization_constant(w.weights, space_->level_mean_diagonal());
  return w;
}

double MaternGeometricKernel::evaluate(const SpectralWeights& weights, const KernelParams& params,
                                       std::span<const double> x, std::span<const double> y) const {
  std::vector<double> g(space_->num_levels());
  space_->level_values(x, y, g);
  return evaluate_kernel(weights, params, g);
}

double MaternGeometricKernel::evaluate(const KernelParams& params, std::span<const double> x,
                                       std::span<const double> y) const {
  const auto cx = space_->validate_point(x);
  const auto cy = space_->validate_point(y);
  return evaluate(weights(params), params, cx, cy);
}

Eigen::MatrixXd MaternGeometricKernel::kernel_matrix(const KernelParams& params, const PointSet& xs,
                                                     const PointSet& ys) const {
  const SpectralWeights w = weights(params);
  const PointSet cx = space_->validate_points(xs);
  const PointSet cy = space_->validate_points(ys);
  Eigen::MatrixXd k(cx.rows(), cy.rows());
  std::vector<double> g(space_->num_levels());
  for (Eigen::Index i = 0; i < cx.rows(); ++i) {
    for (Eigen::Index j = 0; j < cy.rows(); ++j) {
      space_->level_values(point_row(cx, i), point_row(cy, j), g);
      k(i, j) = evaluate_kernel(w, params, g);
    }
  }
  return k;
}

Eigen::MatrixXd MaternGeometricKernel::kernel_matrix(const KernelParams& params, const PointSet& xs) const {
  const SpectralWeights w = weights(params);
  const PointSet cx = space_->validate_points(xs);
  Eigen::MatrixXd k(cx.rows(), cx.rows());
  std::vector<double> g(space_->num_levels());
  for (Eigen::Index i = 0; i < cx.rows(); ++i) {
    for (Eigen::Index j = i; j < cx.rows(); ++j) {
      space_->level_values(point_row(cx, i), point_row(cx, j), g);
      k(i, j) = evaluate_kernel(w, params, g);
      k(j, i) = k(i, j);
    }
  }
  return k;
}

Eigen::VectorXd MaternGeometricKernel::kernel_diag(const KernelParams& params, const PointSet& xs) const {
  const SpectralWeights w = weights(params);
  const PointSet cx = space_->validate_points(xs);
  Eigen::VectorXd d(cx.rows());
  std::vector<double> g(space_->num_levels());
  for (Eigen::Index i = 0; i < cx.rows(); ++i) {
    space_->level_values(point_row(cx, i), point_row(cx, i), g);
    d(i) = evaluate_kernel(w, params, g);
  }
  return d;
}

ProductGeometricKernel::ProductGeometricKernel(std::vector<MaternGeometricKernel> factors)
    : factors_(std::move(factors)) {
  if (factors_.size() < 2) throw ValidationError("product kernel needs at least two factors");
  for (const auto& f : factors_) {
    offsets_.push_back(width_);
    width_ += f.space().point_width();
  }
}

PointSet ProductGeometricKernel::slice(const PointSet& xs, std::size_t factor) const {
  const auto w = static_cast<Eigen::Index>(factors_[factor].space().point_width());
  return xs.middleCols(static_cast<Eigen::Index>(offsets_[factor]), w);
}

PointSet ProductGeometricKernel::validate_points(const PointSet& xs) const {
  if (xs.rows() > 0 && static_cast<std::size_t>(xs.cols()) != width_) {
    throw ValidationError("product points need " + std::to_string(width_) + " coordinates, got " +
                          std::to_string(xs.cols()));
  }
  PointSet out(xs.rows(), static_cast<Eigen::Index>(width_));
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    const auto w = static_cast<Eigen::Index>(factors_[k].space().point_width());
    out.middleCols(static_cast<Eigen::Index>(offsets_[k]), w) = factors_[k].space().validate_points(slice(xs, k));
  }
  return out;
}

std::vector<KernelParams> ProductGeometricKernel::unit_params(std::span<const KernelParams> factor_params,
                                                              double amplitude) const {
  if (factor_params.size() != factors_.size()) {
    throw ValidationError("product kernel has " + std::to_string(factors_.size()) + " factors, got " +
                          std::to_string(factor_params.size()) + " parameter sets");
  }
  KernelParams global;
  global.amplitude = amplitude;
  global.validate();
  std::vector<KernelParams> out(factor_params.begin(), factor_params.end());
  for (auto& p : out) p.amplitude = 1.0;
  return out;
}

Eigen::MatrixXd ProductGeometricKernel::kernel_matrix(std::span<const KernelParams> factor_params, double amplitude,
                                                      const PointSet& xs, const PointSet& ys) const {
  const auto params = unit_params(factor_params, amplitude);
  const PointSet cx = validate_points(xs);
  const PointSet cy = validate_points(ys);
  Eigen::MatrixXd k = Eigen::MatrixXd::Constant(cx.rows(), cy.rows(), amplitude);
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    k.array() *= factors_[f].kernel_matrix(params[f], slice(cx, f), slice(cy, f)).array();
  }
  return k;
}

Eigen::MatrixXd ProductGeometricKernel::kernel_matrix(std::span<const KernelParams> factor_params, double amplitude,
                                                      const PointSet& xs) const {
  const auto params = unit_params(factor_params, amplitude);
  const PointSet cx = validate_points(xs);
  Eigen::MatrixXd k = Eigen::MatrixXd::Constant(cx.rows(), cx.rows(), amplitude);
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    k.array() *= factors_[f].kernel_matrix(params[f], slice(cx, f)).array();
  }
  return k;
}

Eigen::VectorXd ProductGeometricKernel::kernel_diag(std::span<const KernelParams> factor_params, double amplitude,
                                                    const PointSet& xs) const {
  const auto params = unit_params(factor_params, amplitude);
  const PointSet cx = validate_points(xs);
  Eigen::VectorXd d = Eigen::VectorXd::Constant(cx.rows(), amplitude);
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    d.array() *= factors_[f].kernel_diag(params[f], slice(cx, f)).array();
  }
  return d;
}

}  // namespace geokernels
