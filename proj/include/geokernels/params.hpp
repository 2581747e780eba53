#pragma once

#include <limits>

namespace geokernels {

/// Hyperparameters of a Matérn or heat kernel.
///
/// `nu` is the smoothness; `KernelParams::kInfinity` selects the heat kernel.
/// `lengthscale` (κ) is measured in the geodesic/graph units of the space and
/// `amplitude` (σ²) is the average prior variance.
struct KernelParams {
  static constexpr double kInfinity = std::numeric_limits<double>::infinity();

  double nu = 2.5;
  double lengthscale = 1.0;
  double amplitude = 1.0;

  bool is_heat() const { return nu == kInfinity; }

  /// Throws DomainError unless nu > 0 (or infinite), κ > 0 and σ² > 0 are finite.
  void validate() const;
};

}  // namespace geokernels
