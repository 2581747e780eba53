#include <cmath>
#include <numbers>
#include <string>

#include "geokernels/errors.hpp"
#include "geokernels/spaces.hpp"

namespace geokernels {

CircleSpace::CircleSpace(std::size_t num_levels) {
  if (num_levels < 1) throw ValidationError("circle needs at least one level");
  for (std::size_t l = 0; l < num_levels; ++l) {
    const double dl = static_cast<double>(l);
    levels_.push_back({l, dl * dl, l == 0 ? 1u : 2u});
    // G_l(θ, θ) = d_l everywhere, so the uniform measure needs one probe.
    mean_diagonal_.push_back(l == 0 ? 1.0 : 2.0);
  }
}

std::vector<double> CircleSpace::validate_point(std::span<const double> x) const {
  if (x.size() != 1) throw ValidationError("circle points are a single angle");
  if (!std::isfinite(x[0])) throw ValidationError("non-finite angle");
  double theta = std::fmod(x[0], 2.0 * std::numbers::pi);
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  if (theta >= 2.0 * std::numbers::pi) theta = 0.0;
  return {theta};
}

void CircleSpace::level_values(std::span<const double> x, std::span<const double> y, std::span<double> out) const {
  const double delta = x[0] - y[0];
  out[0] = 1.0;
  for (std::size_t l = 1; l < out.size(); ++l) out[l] = 2.0 * std::cos(static_cast<double>(l) * delta);
}

double CircleSpace::level_value(std::size_t level, std::span<const double> x, std::span<const double> y) const {
  return level == 0 ? 1.0 : 2.0 * std::cos(static_cast<double>(level) * (x[0] - y[0]));
}

void CircleSpace::eigenfunctions(std::span<const double> x, std::span<double> out) const {
  out[0] = 1.0;
  for (std::size_t l = 1; l < num_levels(); ++l) {
    const double a = static_cast<double>(l) * x[0];
    out[2 * l - 1] = std::numbers::sqrt2 * std::cos(a);
    out[2 * l] = std::numbers::sqrt2 * std::sin(a);
  }
}

}  // namespace geokernels
