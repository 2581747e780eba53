#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "geokernels/kernels.hpp"

namespace geokernels {

/// Unscaled per-level features ψ_l: X → R^{d_l} with ψ_l(x)ᵀψ_l(x') = G_l(x,x').
///
/// Exact eigenfunctions are used where the space has them. Levels known only
/// through G_l (spheres, SU(2)) are factored on a fixed design set Z:
/// with B = [G_l(z_a, z_b)] = V Λ Vᵀ, ψ_l(x) = Λ^{-1/2} Vᵀ [G_l(z_a, x)]_a,
/// which reproduces G_l exactly once B has full rank d_l. Product levels are
/// Kronecker products of factor-level features.
class LevelFeatures {
 public:
  explicit LevelFeatures(std::shared_ptr<const DiscreteSpectrumSpace> space);

  const DiscreteSpectrumSpace& space() const { return *space_; }
  std::size_t dimension() const { return offsets_.back(); }
  std::size_t offset(std::size_t level) const { return offsets_[level]; }

  /// Writes ψ_0(x), ψ_1(x), ... into `out` (size dimension()).
  void evaluate(std::span<const double> x, std::span<double> out) const;

  /// Design points used for synthesized levels: a Fibonacci lattice on S²,
  /// seeded uniform draws on other spheres and on SU(2).
  static PointSet design_points(const DiscreteSpectrumSpace& space, std::size_t count);

 private:
  struct Synthesized {
    PointSet design;
    Eigen::MatrixXd projection;  // d_l × M, Λ^{-1/2} Vᵀ
  };

  std::shared_ptr<const DiscreteSpectrumSpace> space_;
  std::vector<std::size_t> offsets_;
  std::vector<Synthesized> synthesized_;            // per level, spaces without eigenfunctions
  std::vector<std::unique_ptr<LevelFeatures>> factor_features_;  // product spaces
};

/// φ(x) with φ(x)ᵀφ(x') equal to the truncated kernel.
class FeatureMap {
 public:
  FeatureMap(std::shared_ptr<const LevelFeatures> levels, std::vector<double> level_scales);

  std::size_t dimension() const { return levels_->dimension(); }
  const std::vector<double>& level_scales() const { return scales_; }

  /// φ(x) for a canonical point.
  Eigen::VectorXd operator()(std::span<const double> x) const;

  /// Rows φ(xs[i]); validates the points. An empty set gives a 0 × ℓ matrix.
  Eigen::MatrixXd feature_matrix(const PointSet& xs) const;

 private:
  std::shared_ptr<const LevelFeatures> levels_;
  std::vector<double> scales_;
};

FeatureMap default_feature_map(const MaternGeometricKernel& kernel, const KernelParams& params);
/// Reuses an existing LevelFeatures, which is the expensive part on spheres.
FeatureMap default_feature_map(std::shared_ptr<const LevelFeatures> levels, const MaternGeometricKernel& kernel,
                               const KernelParams& params);

struct SampleSpec {
  std::uint64_t seed = 0;
  std::size_t num_samples = 1;
};

/// num_samples × N matrix of draws ζᵀφ(xs[·]), ζ ~ N(0, I); sample j uses
/// the Philox stream j of the seed.
Eigen::MatrixXd sample_prior(const FeatureMap& features, const PointSet& xs, const SampleSpec& spec);

}  // namespace geokernels
