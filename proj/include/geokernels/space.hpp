#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "geokernels/spectral.hpp"

namespace geokernels {

/// A batch of points, one per row. Rows are contiguous so a single point can
/// be handed around as a span.
using PointSet = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline std::span<const double> point_row(const PointSet& xs, Eigen::Index i) {
  return {xs.data() + i * xs.cols(), static_cast<std::size_t>(xs.cols())};
}

/// A space whose Laplacian has a discrete spectrum, truncated to finitely many
/// levels ordered by nondecreasing eigenvalue.
///
/// Points are fixed-width real vectors: an angle on the circle, ambient
/// coordinates on spheres, a unit quaternion on SU(2), an integer index on
/// graphs and meshes, and the concatenation of factor points on products.
/// Instances are immutable after construction.
class DiscreteSpectrumSpace {
 public:
  virtual ~DiscreteSpectrumSpace() = default;

  virtual std::string name() const = 0;

  /// Dimension constant entering the Matérn exponent ν + n/2.
  virtual int n_dim() const = 0;

  /// Number of reals per point.
  virtual std::size_t point_width() const = 0;

  const std::vector<Level>& levels() const { return levels_; }
  std::size_t num_levels() const { return levels_.size(); }

  /// Sum of level dimensions.
  std::size_t total_dimension() const;

  /// Returns the canonical form of `x` (e.g. renormalized to the unit sphere)
  /// or throws ValidationError.
  virtual std::vector<double> validate_point(std::span<const double> x) const = 0;

  /// Validates every row; throws ValidationError naming the row on failure.
  PointSet validate_points(const PointSet& xs) const;

  /// Writes G_l(x, y) for every retained level into `out`.
  virtual void level_values(std::span<const double> x, std::span<const double> y,
                            std::span<double> out) const = 0;

  /// G_l(x, y) for a single level.
  virtual double level_value(std::size_t level, std::span<const double> x, std::span<const double> y) const;

  virtual bool has_eigenfunctions() const { return false; }

  /// Writes f_{l,s}(x), level by level, into `out` (size total_dimension()).
  /// Throws std::logic_error on spaces known only through G_l.
  virtual void eigenfunctions(std::span<const double> x, std::span<double> out) const;

  /// m_l = ∫ G_l(x,x) dμ(x), with μ the probability measure the kernel
  /// variance is normalized against.
  const std::vector<double>& level_mean_diagonal() const { return mean_diagonal_; }

 protected:
  std::vector<Level> levels_;
  std::vector<double> mean_diagonal_;
};

}  // namespace geokernels
