#include <algorithm>
#include <string>
#include <utility>

#include "geokernels/errors.hpp"
#include "geokernels/spaces.hpp"

namespace geokernels {

namespace {

// Upper bound on the enumerated tuple grid before truncation.
constexpr std::size_t kMaxTupleGrid = std::size_t{1} << 24;

std::vector<std::size_t> level_offsets(const DiscreteSpectrumSpace& space) {
  std::vector<std::size_t> offsets{0};
  for (const Level& l : space.levels()) offsets.push_back(offsets.back() + l.dimension);
  return offsets;
}

}  // namespace

ProductSpace::ProductSpace(std::vector<Factor> factors, std::optional<std::size_t> num_levels)
    : factors_(std::move(factors)) {
  if (factors_.size() < 2) throw ValidationError("product space needs at least two factors");
  std::size_t grid = 1;
  for (const Factor& f : factors_) {
    if (!f) throw ValidationError("product space factor is null");
    offsets_.push_back(width_);
    width_ += f->point_width();
    n_dim_ += f->n_dim();
    explicit_ = explicit_ && f->has_eigenfunctions();
    if (grid > kMaxTupleGrid / f->num_levels()) throw ValidationError("product level grid is too large");
    grid *= f->num_levels();
  }
  const std::size_t count = num_levels.value_or(grid);
  if (count < 1 || count > grid) {
    throw ValidationError("product levels must be in [1, " + std::to_string(grid) + "], got " + std::to_string(count));
  }

  // Flat index f enumerates tuples lexicographically (first factor slowest),
  // so ordering by (λ, f) is ordering by λ with lexicographic tie-break.
  const std::size_t m = factors_.size();
  std::vector<std::pair<double, std::size_t>> order(grid);
  std::vector<std::size_t> tuple(m);
  for (std::size_t flat = 0; flat < grid; ++flat) {
    std::size_t rest = flat;
    double lambda = 0.0;
    for (std::size_t k = m; k-- > 0;) {
      const std::size_t nl = factors_[k]->num_levels();
      lambda += factors_[k]->levels()[rest % nl].eigenvalue;
      rest /= nl;
    }
    order[flat] = {lambda, flat};
  }
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end());

  tuples_.resize(count * m);
  for (std::size_t l = 0; l < count; ++l) {
    std::size_t rest = order[l].second;
    for (std::size_t k = m; k-- > 0;) {
      const std::size_t nl = factors_[k]->num_levels();
      tuple[k] = rest % nl;
      rest /= nl;
    }
    std::size_t dim = 1;
    double mean = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      tuples_[l * m + k] = tuple[k];
      dim *= factors_[k]->levels()[tuple[k]].dimension;
      mean *= factors_[k]->level_mean_diagonal()[tuple[k]];
    }
    levels_.push_back({l, order[l].first, dim});
    mean_diagonal_.push_back(mean);
  }
}

std::string ProductSpace::name() const {
  std::string out = "product(";
  for (std::size_t k = 0; k < factors_.size(); ++k) out += (k ? "," : "") + factors_[k]->name();
  return out + ")";
}

std::span<const std::size_t> ProductSpace::level_tuple(std::size_t level) const {
  return {tuples_.data() + level * factors_.size(), factors_.size()};
}

std::vector<double> ProductSpace::validate_point(std::span<const double> x) const {
  if (x.size() != width_) {
    throw ValidationError("product points need " + std::to_string(width_) + " coordinates, got " +
                          std::to_string(x.size()));
  }
  std::vector<double> out;
  out.reserve(width_);
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    try {
      const auto part = factors_[k]->validate_point(x.subspan(offsets_[k], factors_[k]->point_width()));
      out.insert(out.end(), part.begin(), part.end());
    } catch (const ValidationError& e) {
      throw ValidationError("factor " + std::to_string(k) + ": " + e.what());
    }
  }
  return out;
}

void ProductSpace::level_values(std::span<const double> x, std::span<const double> y, std::span<double> out) const {
  const std::size_t m = factors_.size();
  std::vector<std::vector<double>> per_factor(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t w = factors_[k]->point_width();
    per_factor[k].resize(factors_[k]->num_levels());
    factors_[k]->level_values(x.subspan(offsets_[k], w), y.subspan(offsets_[k], w), per_factor[k]);
  }
  for (std::size_t l = 0; l < out.size(); ++l) {
    double v = 1.0;
    for (std::size_t k = 0; k < m; ++k) v *= per_factor[k][tuples_[l * m + k]];
    out[l] = v;
  }
}

double ProductSpace::level_value(std::size_t level, std::span<const double> x, std::span<const double> y) const {
  const std::size_t m = factors_.size();
  double v = 1.0;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t w = factors_[k]->point_width();
    v *= factors_[k]->level_value(tuples_[level * m + k], x.subspan(offsets_[k], w), y.subspan(offsets_[k], w));
  }
  return v;
}

void ProductSpace::eigenfunctions(std::span<const double> x, std::span<double> out) const {
  if (!explicit_) DiscreteSpectrumSpace::eigenfunctions(x, out);
  const std::size_t m = factors_.size();
  std::vector<std::vector<double>> values(m);
  std::vector<std::vector<std::size_t>> offsets(m);
  for (std::size_t k = 0; k < m; ++k) {
    values[k].resize(factors_[k]->total_dimension());
    factors_[k]->eigenfunctions(x.subspan(offsets_[k], factors_[k]->point_width()), values[k]);
    offsets[k] = level_offsets(*factors_[k]);
  }
  std::size_t pos = 0;
  std::vector<double> block;
  std::vector<double> next;
  for (std::size_t l = 0; l < num_levels(); ++l) {
    block.assign(1, 1.0);
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t fl = tuples_[l * m + k];
      const std::size_t begin = offsets[k][fl];
      const std::size_t len = offsets[k][fl + 1] - begin;
      next.resize(block.size() * len);
      for (std::size_t a = 0; a < block.size(); ++a) {
        for (std::size_t b = 0; b < len; ++b) next[a * len + b] = block[a] * values[k][begin + b];
      }
      block.swap(next);
    }
    std::copy(block.begin(), block.end(), out.begin() + static_cast<std::ptrdiff_t>(pos));
    pos += block.size();
  }
}

}  // namespace geokernels
