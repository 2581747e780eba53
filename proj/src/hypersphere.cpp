#include <algorithm>
#include <cmath>
#include <string>

#include "detail.hpp"
#include "geokernels/errors.hpp"
#include "geokernels/gegenbauer.hpp"
#include "geokernels/spaces.hpp"

namespace geokernels {

namespace {

// (2l + n − 1)/(n − 1) · binom(l + n − 2, l)
double sphere_multiplicity(std::size_t l, int n) {
  double binom = 1.0;
  for (std::size_t k = 1; k <= l; ++k) binom *= static_cast<double>(n - 2 + static_cast<int>(k)) / static_cast<double>(k);
  return (2.0 * static_cast<double>(l) + n - 1.0) / (n - 1.0) * binom;
}

double inner(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

HypersphereSpace::HypersphereSpace(int dim, std::size_t num_levels) : dim_(dim), alpha_(0.5 * (dim - 1)) {
  if (dim < 2) throw ValidationError("hypersphere dimension must be at least 2, got " + std::to_string(dim));
  if (num_levels < 1) throw ValidationError("hypersphere needs at least one level");
  at_one_.resize(num_levels);
  gegenbauer_all(alpha_, 1.0, at_one_);
  for (std::size_t l = 0; l < num_levels; ++l) {
    const double dl = static_cast<double>(l);
    levels_.push_back({l, dl * (dl + dim - 1.0), static_cast<std::size_t>(std::llround(sphere_multiplicity(l, dim)))});
  }
  std::vector<double> pole(point_width(), 0.0);
  pole.back() = 1.0;
  mean_diagonal_.resize(num_levels);
  level_values(pole, pole, mean_diagonal_);
}

std::string HypersphereSpace::name() const { return "hypersphere(" + std::to_string(dim_) + ")"; }

std::vector<double> HypersphereSpace::validate_point(std::span<const double> x) const {
  return detail::unit_vector(x, point_width());
}

void HypersphereSpace::level_values(std::span<const double> x, std::span<const double> y,
                                    std::span<double> out) const {
  gegenbauer_all(alpha_, inner(x, y), out);
  for (std::size_t l = 0; l < out.size(); ++l) {
    out[l] *= static_cast<double>(levels_[l].dimension) / at_one_[l];
  }
}

double HypersphereSpace::level_value(std::size_t level, std::span<const double> x,
                                     std::span<const double> y) const {
  return static_cast<double>(levels_.at(level).dimension) *
         gegenbauer(static_cast<int>(level), alpha_, inner(x, y)) / at_one_[level];
}

SU2Space::SU2Space(std::size_t num_levels) {
  if (num_levels < 1) throw ValidationError("su2 needs at least one level");
  for (std::size_t l = 0; l < num_levels; ++l) {
    const double dl = static_cast<double>(l);
    levels_.push_back({l, dl * (dl + 2.0), (l + 1) * (l + 1)});
  }
  const std::vector<double> identity{1.0, 0.0, 0.0, 0.0};
  mean_diagonal_.resize(num_levels);
  level_values(identity, identity, mean_diagonal_);
}

std::vector<double> SU2Space::validate_point(std::span<const double> x) const {
  try {
    return detail::unit_vector(x, 4);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("not an SU(2) element (unit quaternion): ") + e.what());
  }
}

double SU2Space::character(std::size_t l, double half_trace) {
  // χ_l(θ) = U_l(cos θ), Chebyshev polynomials of the second kind; the
  // recurrence is exact at θ ∈ {0, π} where sin((l+1)θ)/sin θ is 0/0.
  const double t = std::clamp(half_trace, -1.0, 1.0);
  double prev = 1.0;
  if (l == 0) return prev;
  double cur = 2.0 * t;
  for (std::size_t k = 2; k <= l; ++k) {
    const double next = 2.0 * t * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

// trace(x⁻¹ y)/2 for unit quaternions: x⁻¹ = x^H and
// Re tr(x^H y) = 2(a a' + b b' + c c' + d d').
double half_trace_of_quotient(std::span<const double> x, std::span<const double> y) {
  const double t = x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
  if (std::abs(t) > 1.0 + 1e-9) throw DomainError("su2: quotient trace outside [-2, 2]");
  return t;
}

}  // namespace

void SU2Space::level_values(std::span<const double> x, std::span<const double> y, std::span<double> out) const {
  const double t = std::clamp(half_trace_of_quotient(x, y), -1.0, 1.0);
  double prev = 0.0;
  double cur = 1.0;
  for (std::size_t l = 0; l < out.size(); ++l) {
    out[l] = static_cast<double>(l + 1) * cur;
    const double next = 2.0 * t * cur - prev;
    prev = cur;
    cur = next;
  }
}

double SU2Space::level_value(std::size_t level, std::span<const double> x, std::span<const double> y) const {
  return static_cast<double>(level + 1) * character(level, half_trace_of_quotient(x, y));
}

}  // namespace geokernels
