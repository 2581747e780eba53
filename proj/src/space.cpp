#include "geokernels/space.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "geokernels/errors.hpp"
#include "detail.hpp"

namespace geokernels {

std::size_t DiscreteSpectrumSpace::total_dimension() const {
  return std::accumulate(levels_.begin(), levels_.end(), std::size_t{0},
                         [](std::size_t acc, const Level& l) { return acc + l.dimension; });
}

PointSet DiscreteSpectrumSpace::validate_points(const PointSet& xs) const {
  if (xs.rows() > 0 && static_cast<std::size_t>(xs.cols()) != point_width()) {
    throw ValidationError(name() + " points need " + std::to_string(point_width()) + " coordinates, got " +
                          std::to_string(xs.cols()));
  }
  PointSet out(xs.rows(), static_cast<Eigen::Index>(point_width()));
  for (Eigen::Index i = 0; i < xs.rows(); ++i) {
    std::vector<double> p;
    try {
      p = validate_point(point_row(xs, i));
    } catch (const ValidationError& e) {
      throw ValidationError("point " + std::to_string(i) + ": " + e.what());
    }
    std::copy(p.begin(), p.end(), out.row(i).data());
  }
  return out;
}

double DiscreteSpectrumSpace::level_value(std::size_t level, std::span<const double> x,
                                          std::span<const double> y) const {
  std::vector<double> all(num_levels());
  level_values(x, y, all);
  return all.at(level);
}

void DiscreteSpectrumSpace::eigenfunctions(std::span<const double>, std::span<double>) const {
  throw std::logic_error(name() + " does not expose individual eigenfunctions");
}

}  // namespace geokernels

namespace geokernels::detail {

std::vector<double> unit_vector(std::span<const double> x, std::size_t width) {
  if (x.size() != width) {
    throw ValidationError("expected " + std::to_string(width) + " coordinates, got " + std::to_string(x.size()));
  }
  double sq = 0.0;
  for (double v : x) {
    if (!std::isfinite(v)) throw ValidationError("non-finite coordinate");
    sq += v * v;
  }
  const double norm = std::sqrt(sq);
  if (norm == 0.0) throw ValidationError("zero norm, not a unit vector");
  if (std::abs(norm - 1.0) > 1e-6) {
    throw ValidationError("norm " + std::to_string(norm) + " deviates from 1 by more than 1e-6");
  }
  std::vector<double> out(x.begin(), x.end());
  for (double& v : out) v /= norm;
  return out;
}

std::size_t index_point(std::span<const double> x, std::size_t count) {
  if (x.size() != 1) throw ValidationError("index points have a single coordinate");
  const double v = x[0];
  if (!std::isfinite(v) || v != std::floor(v)) throw ValidationError("index is not an integer");
  if (v < 0.0 || v >= static_cast<double>(count)) {
    throw ValidationError("index " + std::to_string(static_cast<long long>(v)) + " out of range [0, " +
                          std::to_string(count) + ")");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace geokernels::detail
