#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Geometry>

#include "detail.hpp"
#include "geokernels/errors.hpp"
#include "geokernels/linalg.hpp"
#include "geokernels/spaces.hpp"

namespace geokernels {

namespace {

Eigen::Vector3d vertex(const MeshData& mesh, std::size_t i) {
  const auto& v = mesh.vertices[i];
  return {v[0], v[1], v[2]};
}

// Twice the triangle area is below this fraction of the squared longest edge.
constexpr double kDegenerateRatio = 1e-12;

}  // namespace

void MeshData::validate() const {
  if (vertices.empty()) throw ValidationError("mesh has no vertices");
  if (faces.empty()) throw ValidationError("mesh has no faces");
  for (const auto& v : vertices) {
    if (!std::isfinite(v[0]) || !std::isfinite(v[1]) || !std::isfinite(v[2])) {
      throw ValidationError("mesh vertex with non-finite coordinates");
    }
  }
  std::vector<bool> used(vertices.size(), false);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& face = faces[f];
    for (std::size_t idx : face) {
      if (idx >= vertices.size()) throw ValidationError("face " + std::to_string(f) + ": vertex index out of range");
      used[idx] = true;
    }
    const Eigen::Vector3d a = vertex(*this, face[0]);
    const Eigen::Vector3d b = vertex(*this, face[1]);
    const Eigen::Vector3d c = vertex(*this, face[2]);
    const double longest = std::max({(b - a).squaredNorm(), (c - b).squaredNorm(), (a - c).squaredNorm()});
    if (!(longest > 0.0) || (b - a).cross(c - a).norm() <= kDegenerateRatio * longest) {
      throw ValidationError("face " + std::to_string(f) + " is degenerate (zero area)");
    }
  }
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (!used[i]) throw ValidationError("vertex " + std::to_string(i) + " is not referenced by any face");
  }
}

Eigen::MatrixXd MeshSpace::stiffness(const MeshData& mesh) {
  const auto n = static_cast<Eigen::Index>(mesh.vertices.size());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const auto& face : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      // Angle at face[k] is opposite the edge (face[k+1], face[k+2]).
      const std::size_t o = face[k];
      const std::size_t i = face[(k + 1) % 3];
      const std::size_t j = face[(k + 2) % 3];
      const Eigen::Vector3d u = vertex(mesh, i) - vertex(mesh, o);
      const Eigen::Vector3d v = vertex(mesh, j) - vertex(mesh, o);
      const double cot = u.dot(v) / u.cross(v).norm();
      if (!std::isfinite(cot)) throw NumericalError("non-finite cotangent weight");
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      lap(ii, jj) -= 0.5 * cot;
      lap(jj, ii) -= 0.5 * cot;
      lap(ii, ii) += 0.5 * cot;
      lap(jj, jj) += 0.5 * cot;
    }
  }
  return lap;
}

Eigen::VectorXd MeshSpace::lumped_mass(const MeshData& mesh) {
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.vertices.size()));
  for (const auto& face : mesh.faces) {
    const Eigen::Vector3d a = vertex(mesh, face[0]);
    const double area = 0.5 * (vertex(mesh, face[1]) - a).cross(vertex(mesh, face[2]) - a).norm();
    for (std::size_t idx : face) mass(static_cast<Eigen::Index>(idx)) += area / 3.0;
  }
  return mass;
}

MeshSpace::MeshSpace(const MeshData& mesh, std::size_t num_levels) {
  mesh.validate();
  const std::size_t n = mesh.vertices.size();
  if (num_levels < 1 || num_levels > n) {
    throw ValidationError("mesh levels must be in [1, " + std::to_string(n) + "], got " + std::to_string(num_levels));
  }
  const Eigen::VectorXd mass = lumped_mass(mesh);
  const Eigen::VectorXd inv_sqrt = mass.cwiseSqrt().cwiseInverse();
  // M^{-1/2} L M^{-1/2}
  const Eigen::MatrixXd sym = inv_sqrt.asDiagonal() * stiffness(mesh) * inv_sqrt.asDiagonal();
  auto eig = linalg::lowest_eigenpairs(sym, static_cast<Eigen::Index>(num_levels));

  const double total = mass.sum();
  measure_ = mass / total;
  // uᵀu = 1 gives Σ m_i f_i² = 1 for f = M^{-1/2}u; rescale to the normalized masses.
  eigenfunctions_ = inv_sqrt.asDiagonal() * eig.vectors * std::sqrt(total);

  const double top = std::max(1.0, std::abs(eig.values.maxCoeff()));
  for (std::size_t l = 0; l < num_levels; ++l) {
    const double lambda = eig.values(static_cast<Eigen::Index>(l));
    if (lambda < -1e-10 * top) throw NumericalError("mesh Laplacian produced a negative eigenvalue");
    levels_.push_back({l, std::max(lambda, 0.0), 1});
    const auto f = eigenfunctions_.col(static_cast<Eigen::Index>(l));
    mean_diagonal_.push_back(measure_.dot(f.cwiseAbs2()));
  }
}

std::vector<double> MeshSpace::validate_point(std::span<const double> x) const {
  return {static_cast<double>(detail::index_point(x, num_vertices()))};
}

void MeshSpace::level_values(std::span<const double> x, std::span<const double> y, std::span<double> out) const {
  const auto i = static_cast<Eigen::Index>(x[0]);
  const auto j = static_cast<Eigen::Index>(y[0]);
  for (std::size_t l = 0; l < out.size(); ++l) {
    const auto c = static_cast<Eigen::Index>(l);
    out[l] = eigenfunctions_(i, c) * eigenfunctions_(j, c);
  }
}

double MeshSpace::level_value(std::size_t level, std::span<const double> x, std::span<const double> y) const {
  const auto c = static_cast<Eigen::Index>(level);
  return eigenfunctions_(static_cast<Eigen::Index>(x[0]), c) * eigenfunctions_(static_cast<Eigen::Index>(y[0]), c);
}

void MeshSpace::eigenfunctions(std::span<const double> x, std::span<double> out) const {
  const auto i = static_cast<Eigen::Index>(x[0]);
  for (Eigen::Index l = 0; l < eigenfunctions_.cols(); ++l) out[static_cast<std::size_t>(l)] = eigenfunctions_(i, l);
}

}  // namespace geokernels
