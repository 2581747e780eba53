#pragma once

#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "geokernels/params.hpp"
#include "geokernels/space.hpp"
#include "geokernels/spectral.hpp"

namespace geokernels {

/// Matérn / heat kernel on a discrete spectrum space.
///
/// Parameters are passed in per call, the handle itself carries no mutable
/// state. The normalization measure is cached by the space
/// (DiscreteSpectrumSpace::level_mean_diagonal).
class MaternGeometricKernel {
 public:
  explicit MaternGeometricKernel(std::shared_ptr<const DiscreteSpectrumSpace> space);

  const DiscreteSpectrumSpace& space() const { return *space_; }
  const std::shared_ptr<const DiscreteSpectrumSpace>& space_ptr() const { return space_; }

  /// ν = 5/2, κ = 1, σ² = 1.
  KernelParams init_params() const { return KernelParams{}; }

  /// Spectral weights with the normalization constant filled in.
  SpectralWeights weights(const KernelParams& params) const;

  /// k(x, y) for canonical (already validated) points.
  double evaluate(const SpectralWeights& weights, const KernelParams& params, std::span<const double> x,
                  std::span<const double> y) const;
  /// k(x, y); validates both points.
  double evaluate(const KernelParams& params, std::span<const double> x, std::span<const double> y) const;

  Eigen::MatrixXd kernel_matrix(const KernelParams& params, const PointSet& xs, const PointSet& ys) const;
  /// Symmetric K_xx; the lower triangle mirrors the upper one exactly.
  Eigen::MatrixXd kernel_matrix(const KernelParams& params, const PointSet& xs) const;
  Eigen::VectorXd kernel_diag(const KernelParams& params, const PointSet& xs) const;

 private:
  std::shared_ptr<const DiscreteSpectrumSpace> space_;
};

/// k((x_1..x_m), (x_1'..x_m')) = σ² Π_i k̂_i(x_i, x_i') with unit-amplitude
/// factor kernels and one shared amplitude. Points concatenate factor points.
class ProductGeometricKernel {
 public:
  explicit ProductGeometricKernel(std::vector<MaternGeometricKernel> factors);

  std::size_t num_factors() const { return factors_.size(); }
  const MaternGeometricKernel& factor(std::size_t i) const { return factors_[i]; }
  std::size_t point_width() const { return width_; }

  /// Validates every factor slice of every row.
  PointSet validate_points(const PointSet& xs) const;

  /// Factor amplitudes are ignored (treated as 1); `amplitude` is the σ² of the product.
  Eigen::MatrixXd kernel_matrix(std::span<const KernelParams> factor_params, double amplitude,
                                const PointSet& xs, const PointSet& ys) const;
  Eigen::MatrixXd kernel_matrix(std::span<const KernelParams> factor_params, double amplitude,
                                const PointSet& xs) const;
  Eigen::VectorXd kernel_diag(std::span<const KernelParams> factor_params, double amplitude,
                              const PointSet& xs) const;

 private:
  PointSet slice(const PointSet& xs, std::size_t factor) const;
  std::vector<KernelParams> unit_params(std::span<const KernelParams> factor_params, double amplitude) const;

  std::vector<MaternGeometricKernel> factors_;
  std::vector<std::size_t> offsets_;
  std::size_t width_ = 0;
};

}  // namespace geokernels
