#include "geokernels/spectral.hpp"

#include <cmath>
#include <string>

#include "geokernels/errors.hpp"

namespace geokernels {

void KernelParams::validate() const {
  if (!(nu > 0.0) || std::isnan(nu)) {
    throw DomainError("nu must be positive or infinite, got " + std::to_string(nu));
  }
  if (!(lengthscale > 0.0) || !std::isfinite(lengthscale)) {
    throw DomainError("lengthscale must be positive and finite, got " + std::to_string(lengthscale));
  }
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
    throw DomainError("amplitude must be positive and finite, got " + std::to_string(amplitude));
  }
}

double phi_heat(double eigenvalue, double lengthscale) {
  if (!(eigenvalue >= 0.0) || !std::isfinite(eigenvalue)) {
    throw DomainError("eigenvalue must be nonnegative, got " + std::to_string(eigenvalue));
  }
  if (!(lengthscale > 0.0) || !std::isfinite(lengthscale)) {
    throw DomainError("lengthscale must be positive, got " + std::to_string(lengthscale));
  }
  return std::exp(-0.5 * lengthscale * lengthscale * eigenvalue);
}

double phi_matern(double eigenvalue, double nu, double lengthscale, int n_dim) {
  if (!(eigenvalue >= 0.0) || !std::isfinite(eigenvalue)) {
    throw DomainError("eigenvalue must be nonnegative, got " + std::to_string(eigenvalue));
  }
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw DomainError("phi_matern needs a finite positive nu, got " + std::to_string(nu));
  }
  if (!(lengthscale > 0.0) || !std::isfinite(lengthscale)) {
    throw DomainError("lengthscale must be positive, got " + std::to_string(lengthscale));
  }
  if (n_dim < 0) {
    throw DomainError("dimension constant must be nonnegative");
  }
  const double rate = 2.0 * nu / (lengthscale * lengthscale);
  return std::pow(rate + eigenvalue, -(nu + 0.5 * n_dim));
}

SpectralWeights spectral_weights(std::span<const Level> levels, const KernelParams& params, int n_dim) {
  if (levels.empty()) {
    throw DomainError("spectral_weights needs at least one level");
  }
  params.validate();
  SpectralWeights out;
  out.weights.reserve(levels.size());
  for (const Level& level : levels) {
    out.weights.push_back(params.is_heat() ? phi_heat(level.eigenvalue, params.lengthscale)
                                           : phi_matern(level.eigenvalue, params.nu, params.lengthscale, n_dim));
  }
  if (!params.is_heat() && !(out.weights.front() > 0.0 && std::isfinite(out.weights.front()))) {
    // Raw Matérn weights under/overflow for large nu; any common factor cancels against C.
    const double rate = 2.0 * params.nu / (params.lengthscale * params.lengthscale);
    const double power = params.nu + 0.5 * n_dim;
    for (std::size_t l = 0; l < levels.size(); ++l) {
      out.weights[l] = std::exp(-power * std::log1p(levels[l].eigenvalue / rate));
    }
  }
  return out;
}

namespace {

double checked_constant(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw NumericalError("normalization constant is not positive and finite: " + std::to_string(c));
  }
  return c;
}

}  // namespace

double normalization_constant(std::span<const double> weights, std::span<const double> level_mean_diagonal) {
  if (weights.size() != level_mean_diagonal.size()) {
    throw DomainError("normalization_constant: weights and mean diagonals differ in length");
  }
  double c = 0.0;
  for (std::size_t l = 0; l < weights.size(); ++l) c += weights[l] * level_mean_diagonal[l];
  return checked_constant(c);
}

double normalization_constant(std::span<const double> weights, std::span<const double> probe_diagonals,
                              std::span<const double> measure) {
  if (measure.empty() || probe_diagonals.size() != measure.size() * weights.size()) {
    throw DomainError("normalization_constant: probe table does not match probes × levels");
  }
  double total = 0.0;
  for (double m : measure) {
    if (!(m >= 0.0)) throw DomainError("normalization_constant: negative probe weight");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw DomainError("normalization_constant: probe weights must sum to one");
  }
  double c = 0.0;
  for (std::size_t p = 0; p < measure.size(); ++p) {
    double row = 0.0;
    for (std::size_t l = 0; l < weights.size(); ++l) row += weights[l] * probe_diagonals[p * weights.size() + l];
    c += measure[p] * row;
  }
  return checked_constant(c);
}

double evaluate_kernel(const SpectralWeights& weights, const KernelParams& params,
                       std::span<const double> level_values) {
  if (level_values.size() != weights.weights.size()) {
    throw DomainError("evaluate_kernel: got " + std::to_string(level_values.size()) + " level values for " +
                      std::to_string(weights.weights.size()) + " weights");
  }
  double sum = 0.0;
  for (std::size_t l = 0; l < level_values.size(); ++l) sum += weights.weights[l] * level_values[l];
  return params.amplitude / weights.normalization * sum;
}

}  // namespace geokernels
