#pragma once

#include <span>
#include <vector>

#include "geokernels/params.hpp"

namespace geokernels {

/// One spectral level: an eigenvalue shared by `dimension` eigenfunctions whose
/// pairwise-product sum G_l is evaluated by the owning space.
struct Level {
  std::size_t index = 0;
  double eigenvalue = 0.0;
  std::size_t dimension = 1;
};

/// Heat spectral weight exp(-κ²λ/2).
double phi_heat(double eigenvalue, double lengthscale);

/// Matérn spectral weight (2ν/κ² + λ)^-(ν + n/2).
///
/// The Γ(ν + n/2) factor that comes out of the gamma integral over heat
/// kernels is omitted; it is absorbed by the normalization constant.
/// `nu` must be finite, heat kernels go through phi_heat.
double phi_matern(double eigenvalue, double nu, double lengthscale, int n_dim);

struct SpectralWeights {
  std::vector<double> weights;
  double normalization = 1.0;
};

/// Per-level weights Φ(λ_l); dispatches to phi_heat when params.nu is infinite.
/// The returned normalization is left at 1.
SpectralWeights spectral_weights(std::span<const Level> levels, const KernelParams& params, int n_dim);

/// C = Σ_l w_l m_l where m_l = ∫ G_l(x,x) dμ(x) is the level's mean diagonal
/// under the space's probability measure.
double normalization_constant(std::span<const double> weights, std::span<const double> level_mean_diagonal);

/// C = Σ_p μ_p Σ_l w_l G_l(x_p, x_p) for a finite probe set.
/// `probe_diagonals` is row-major, probes × levels.
double normalization_constant(std::span<const double> weights, std::span<const double> probe_diagonals,
                              std::span<const double> measure);

/// (σ²/C) Σ_l w_l G_l(x, x').
double evaluate_kernel(const SpectralWeights& weights, const KernelParams& params,
                       std::span<const double> level_values);

}  // namespace geokernels
