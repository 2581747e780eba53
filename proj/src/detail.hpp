#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace geokernels::detail {

/// Unit-norm check shared by spheres and SU(2): deviations up to 1e-6 are
/// renormalized, larger ones throw ValidationError.
std::vector<double> unit_vector(std::span<const double> x, std::size_t width);

/// Integer index in [0, count); throws ValidationError otherwise.
std::size_t index_point(std::span<const double> x, std::size_t count);

}  // namespace geokernels::detail
