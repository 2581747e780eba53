#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "detail.hpp"
#include "geokernels/errors.hpp"
#include "geokernels/linalg.hpp"
#include "geokernels/spaces.hpp"

namespace geokernels {

void GraphData::validate() const {
  if (num_nodes < 1) throw ValidationError("graph needs at least one node");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const GraphEdge& e : edges) {
    const std::string tag = "edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) + ")";
    if (e.i >= num_nodes || e.j >= num_nodes) throw ValidationError(tag + ": node index out of range");
    if (e.i == e.j) throw ValidationError(tag + ": self-loop");
    if (!std::isfinite(e.weight) || e.weight < 0.0) throw ValidationError(tag + ": weight must be finite and nonnegative");
    if (!seen.emplace(std::min(e.i, e.j), std::max(e.i, e.j)).second) throw ValidationError(tag + ": duplicate edge");
  }
}

Eigen::MatrixXd GraphSpace::laplacian(const GraphData& graph) {
  graph.validate();
  const auto n = static_cast<Eigen::Index>(graph.num_nodes);
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const GraphEdge& e : graph.edges) {
    const auto i = static_cast<Eigen::Index>(e.i);
    const auto j = static_cast<Eigen::Index>(e.j);
    lap(i, j) -= e.weight;
    lap(j, i) -= e.weight;
    lap(i, i) += e.weight;
    lap(j, j) += e.weight;
  }
  return lap;
}

GraphSpace::GraphSpace(const GraphData& graph, std::optional<std::size_t> num_levels) {
  const Eigen::MatrixXd lap = laplacian(graph);
  const std::size_t n = graph.num_nodes;
  const std::size_t count = num_levels.value_or(n);
  if (count < 1 || count > n) {
    throw ValidationError("graph levels must be in [1, " + std::to_string(n) + "], got " + std::to_string(count));
  }
  auto eig = linalg::lowest_eigenpairs(lap, static_cast<Eigen::Index>(count));

  // Clamp round-off below zero; a genuinely negative eigenvalue is a solver failure.
  const double top = std::max(1.0, std::abs(eig.values.maxCoeff()));
  const double scale = std::sqrt(static_cast<double>(n));
  eigenvectors_ = eig.vectors * scale;
  for (std::size_t l = 0; l < count; ++l) {
    double lambda = eig.values(static_cast<Eigen::Index>(l));
    if (lambda < -1e-10 * top) throw NumericalError("graph Laplacian produced a negative eigenvalue");
    levels_.push_back({l, std::max(lambda, 0.0), 1});
    mean_diagonal_.push_back(eigenvectors_.col(static_cast<Eigen::Index>(l)).squaredNorm() / static_cast<double>(n));
  }
}

std::vector<double> GraphSpace::validate_point(std::span<const double> x) const {
  return {static_cast<double>(detail::index_point(x, num_nodes()))};
}

void GraphSpace::level_values(std::span<const double> x, std::span<const double> y, std::span<double> out) const {
  const auto i = static_cast<Eigen::Index>(x[0]);
  const auto j = static_cast<Eigen::Index>(y[0]);
  for (std::size_t l = 0; l < out.size(); ++l) {
    const auto c = static_cast<Eigen::Index>(l);
    out[l] = eigenvectors_(i, c) * eigenvectors_(j, c);
  }
}

double GraphSpace::level_value(std::size_t level, std::span<const double> x, std::span<const double> y) const {
  const auto c = static_cast<Eigen::Index>(level);
  return eigenvectors_(static_cast<Eigen::Index>(x[0]), c) * eigenvectors_(static_cast<Eigen::Index>(y[0]), c);
}

void GraphSpace::eigenfunctions(std::span<const double> x, std::span<double> out) const {
  const auto i = static_cast<Eigen::Index>(x[0]);
  for (Eigen::Index l = 0; l < eigenvectors_.cols(); ++l) out[static_cast<std::size_t>(l)] = eigenvectors_(i, l);
}

}  // namespace geokernels
