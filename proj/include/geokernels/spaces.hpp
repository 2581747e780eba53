#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "geokernels/space.hpp"

namespace geokernels {

/// Unit circle, points are angles in radians. Level l has eigenvalue l² and
/// eigenfunctions √2 cos(lθ), √2 sin(lθ) (the constant for l = 0).
class CircleSpace final : public DiscreteSpectrumSpace {
 public:
  explicit CircleSpace(std::size_t num_levels);

  std::string name() const override { return "circle"; }
  int n_dim() const override { return 1; }
  std::size_t point_width() const override { return 1; }
  std::vector<double> validate_point(std::span<const double> x) const override;
  void level_values(std::span<const double> x, std::span<const double> y, std::span<double> out) const override;
  double level_value(std::size_t level, std::span<const double> x, std::span<const double> y) const override;
  bool has_eigenfunctions() const override { return true; }
  void eigenfunctions(std::span<const double> x, std::span<double> out) const override;
};

/// Unit sphere S^n embedded in R^{n+1}. Levels are the spherical-harmonic
/// eigenspaces, evaluated through the addition theorem
/// G_l(x,x') = d_l C_l^α(⟨x,x'⟩) / C_l^α(1), α = (n-1)/2.
class HypersphereSpace final : public DiscreteSpectrumSpace {
 public:
  HypersphereSpace(int dim, std::size_t num_levels);

  int dim() const { return dim_; }
  std::string name() const override;
  int n_dim() const override { return dim_; }
  std::size_t point_width() const override { return static_cast<std::size_t>(dim_) + 1; }
  std::vector<double> validate_point(std::span<const double> x) const override;
  void level_values(std::span<const double> x, std::span<const double> y, std::span<double> out) const override;
  double level_value(std::size_t level, std::span<const double> x, std::span<const double> y) const override;

 private:
  int dim_;
  double alpha_;
  std::vector<double> at_one_;  // C_l^α(1)
};

/// SU(2), points are unit quaternions (a, b, c, d) standing for
/// [[a+bi, c+di], [-c+di, a-bi]]. Level l is the irreducible representation of
/// dimension l+1 with G_l(x,x') = (l+1) χ_l(x⁻¹x').
class SU2Space final : public DiscreteSpectrumSpace {
 public:
  explicit SU2Space(std::size_t num_levels);

  std::string name() const override { return "su2"; }
  int n_dim() const override { return 3; }
  std::size_t point_width() const override { return 4; }
  std::vector<double> validate_point(std::span<const double> x) const override;
  void level_values(std::span<const double> x, std::span<const double> y, std::span<double> out) const override;
  double level_value(std::size_t level, std::span<const double> x, std::span<const double> y) const override;

  /// Character of the (l+1)-dimensional irreducible representation at a group
  /// element with trace 2 cos θ, i.e. sin((l+1)θ)/sin θ.
  static double character(std::size_t l, double half_trace);
};

struct GraphEdge {
  std::size_t i = 0;
  std::size_t j = 0;
  double weight = 1.0;
};

/// Undirected graph with nonnegative weights. Edges are stored with i < j.
struct GraphData {
  std::size_t num_nodes = 0;
  std::vector<GraphEdge> edges;

  /// Throws ValidationError on self-loops, duplicates, bad indices or weights.
  void validate() const;
};

/// Graph with the unnormalized Laplacian D − W. Every eigenpair is its own
/// level; eigenvectors are scaled to unit mean square over the nodes.
class GraphSpace final : public DiscreteSpectrumSpace {
 public:
  /// Keeps the `num_levels` smallest eigenpairs, all of them when unset.
  explicit GraphSpace(const GraphData& graph, std::optional<std::size_t> num_levels = std::nullopt);

  std::string name() const override { return "graph"; }
  int n_dim() const override { return 0; }
  std::size_t point_width() const override { return 1; }
  std::size_t num_nodes() const { return static_cast<std::size_t>(eigenvectors_.rows()); }
  std::vector<double> validate_point(std::span<const double> x) const override;
  void level_values(std::span<const double> x, std::span<const double> y, std::span<double> out) const override;
  double level_value(std::size_t level, std::span<const double> x, std::span<const double> y) const override;
  bool has_eigenfunctions() const override { return true; }
  void eigenfunctions(std::span<const double> x, std::span<double> out) const override;

  /// Nodes × levels, columns scaled so that (1/N) Σ_i f(i)² = 1.
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }

  static Eigen::MatrixXd laplacian(const GraphData& graph);

 private:
  Eigen::MatrixXd eigenvectors_;
};

/// Triangle mesh, counterclockwise faces.
struct MeshData {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<std::size_t, 3>> faces;

  /// Throws ValidationError on out-of-range indices, unreferenced vertices or
  /// degenerate faces.
  void validate() const;
};

/// Mesh with the cotangent Laplacian and lumped (barycentric) mass matrix.
/// Eigenfunctions have unit mean square under the normalized vertex masses.
class MeshSpace final : public DiscreteSpectrumSpace {
 public:
  MeshSpace(const MeshData& mesh, std::size_t num_levels);

  std::string name() const override { return "mesh"; }
  int n_dim() const override { return 2; }
  std::size_t point_width() const override { return 1; }
  std::size_t num_vertices() const { return static_cast<std::size_t>(eigenfunctions_.rows()); }
  std::vector<double> validate_point(std::span<const double> x) const override;
  void level_values(std::span<const double> x, std::span<const double> y, std::span<double> out) const override;
  double level_value(std::size_t level, std::span<const double> x, std::span<const double> y) const override;
  bool has_eigenfunctions() const override { return true; }
  void eigenfunctions(std::span<const double> x, std::span<double> out) const override;

  /// Normalized lumped masses, summing to one.
  const Eigen::VectorXd& vertex_measure() const { return measure_; }

  /// Positive semi-definite cotangent stiffness matrix.
  static Eigen::MatrixXd stiffness(const MeshData& mesh);
  /// One third of the incident triangle areas per vertex.
  static Eigen::VectorXd lumped_mass(const MeshData& mesh);

 private:
  Eigen::MatrixXd eigenfunctions_;
  Eigen::VectorXd measure_;
};

/// Cartesian product of spaces. Levels are tuples of factor levels with
/// additive eigenvalues and multiplicative G_l; the tuples with the smallest
/// combined eigenvalue are kept, ties broken lexicographically.
class ProductSpace final : public DiscreteSpectrumSpace {
 public:
  using Factor = std::shared_ptr<const DiscreteSpectrumSpace>;

  /// Keeps `num_levels` tuples, or the full tuple grid when unset.
  explicit ProductSpace(std::vector<Factor> factors, std::optional<std::size_t> num_levels = std::nullopt);

  std::string name() const override;
  int n_dim() const override { return n_dim_; }
  std::size_t point_width() const override { return width_; }
  std::vector<double> validate_point(std::span<const double> x) const override;
  void level_values(std::span<const double> x, std::span<const double> y, std::span<double> out) const override;
  double level_value(std::size_t level, std::span<const double> x, std::span<const double> y) const override;
  bool has_eigenfunctions() const override { return explicit_; }
  void eigenfunctions(std::span<const double> x, std::span<double> out) const override;

  const std::vector<Factor>& factors() const { return factors_; }
  /// Factor level indices of retained level `level`.
  std::span<const std::size_t> level_tuple(std::size_t level) const;
  /// Offset of factor `f`'s coordinates inside a product point.
  std::size_t factor_offset(std::size_t f) const { return offsets_[f]; }

 private:
  std::vector<Factor> factors_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> tuples_;  // num_levels × factors, row-major
  std::size_t width_ = 0;
  int n_dim_ = 0;
  bool explicit_ = true;
};

}  // namespace geokernels
