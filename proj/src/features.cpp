#include "geokernels/features.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "geokernels/errors.hpp"
#include "geokernels/linalg.hpp"
#include "geokernels/random.hpp"
#include "geokernels/spaces.hpp"

namespace geokernels {

namespace {

constexpr std::uint64_t kDesignSeed = 0x6b65726e656c73;

std::size_t design_size(std::size_t dimension) { return dimension + std::max<std::size_t>(dimension / 2, 4); }

PointSet fibonacci_sphere(std::size_t count) {
  PointSet pts(static_cast<Eigen::Index>(count), 3);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden * static_cast<double>(i);
    const auto row = static_cast<Eigen::Index>(i);
    pts(row, 0) = r * std::cos(a);
    pts(row, 1) = r * std::sin(a);
    pts(row, 2) = z;
  }
  return pts;
}

PointSet random_unit_vectors(std::size_t count, std::size_t width) {
  Philox rng(kDesignSeed);
  PointSet pts(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(width));
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    for (Eigen::Index c = 0; c < pts.cols(); ++c) pts(i, c) = rng.normal();
    pts.row(i).normalize();
  }
  return pts;
}

}  // namespace

PointSet LevelFeatures::design_points(const DiscreteSpectrumSpace& space, std::size_t count) {
  if (const auto* sphere = dynamic_cast<const HypersphereSpace*>(&space)) {
    if (sphere->dim() == 2) return fibonacci_sphere(count);
    return random_unit_vectors(count, sphere->point_width());
  }
  if (dynamic_cast<const SU2Space*>(&space) != nullptr) return random_unit_vectors(count, 4);
  throw std::logic_error("no design set for " + space.name());
}

LevelFeatures::LevelFeatures(std::shared_ptr<const DiscreteSpectrumSpace> space) : space_(std::move(space)) {
  offsets_.push_back(0);
  for (const Level& l : space_->levels()) offsets_.push_back(offsets_.back() + l.dimension);
  if (space_->has_eigenfunctions()) return;

  if (const auto* product = dynamic_cast<const ProductSpace*>(space_.get())) {
    for (const auto& f : product->factors()) factor_features_.push_back(std::make_unique<LevelFeatures>(f));
    return;
  }

  for (const Level& level : space_->levels()) {
    Synthesized s;
    s.design = design_points(*space_, design_size(level.dimension));
    const Eigen::Index m = s.design.rows();
    Eigen::MatrixXd gram(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = 0; b <= a; ++b) {
        gram(a, b) = space_->level_value(level.index, point_row(s.design, a), point_row(s.design, b));
        gram(b, a) = gram(a, b);
      }
    }
    const auto d = static_cast<Eigen::Index>(level.dimension);
    const auto eig = linalg::highest_eigenpairs(gram, d);
    const double top = eig.values(d - 1);
    if (!(eig.values(0) > 1e-10 * top)) {
      throw NumericalError("design set does not resolve level " + std::to_string(level.index) + " of " +
                           space_->name());
    }
    s.projection = eig.values.cwiseSqrt().cwiseInverse().asDiagonal() * eig.vectors.transpose();
    synthesized_.push_back(std::move(s));
  }
}

void LevelFeatures::evaluate(std::span<const double> x, std::span<double> out) const {
  if (space_->has_eigenfunctions()) {
    space_->eigenfunctions(x, out);
    return;
  }
  if (!factor_features_.empty()) {
    const auto& product = static_cast<const ProductSpace&>(*space_);
    std::vector<std::vector<double>> values(factor_features_.size());
    for (std::size_t k = 0; k < factor_features_.size(); ++k) {
      values[k].resize(factor_features_[k]->dimension());
      factor_features_[k]->evaluate(x.subspan(product.factor_offset(k), product.factors()[k]->point_width()),
                                    values[k]);
    }
    std::vector<double> block;
    std::vector<double> next;
    for (std::size_t l = 0; l < space_->num_levels(); ++l) {
      const auto tuple = product.level_tuple(l);
      block.assign(1, 1.0);
      for (std::size_t k = 0; k < tuple.size(); ++k) {
        const std::size_t begin = factor_features_[k]->offset(tuple[k]);
        const std::size_t len = factor_features_[k]->offset(tuple[k] + 1) - begin;
        next.resize(block.size() * len);
        for (std::size_t a = 0; a < block.size(); ++a) {
          for (std::size_t b = 0; b < len; ++b) next[a * len + b] = block[a] * values[k][begin + b];
        }
        block.swap(next);
      }
      std::copy(block.begin(), block.end(), out.begin() + static_cast<std::ptrdiff_t>(offsets_[l]));
    }
    return;
  }
  for (std::size_t l = 0; l < synthesized_.size(); ++l) {
    const Synthesized& s = synthesized_[l];
    Eigen::VectorXd g(s.design.rows());
    for (Eigen::Index a = 0; a < g.size(); ++a) g(a) = space_->level_value(l, point_row(s.design, a), x);
    Eigen::Map<Eigen::VectorXd>(out.data() + offsets_[l], s.projection.rows()) = s.projection * g;
  }
}

FeatureMap::FeatureMap(std::shared_ptr<const LevelFeatures> levels, std::vector<double> level_scales)
    : levels_(std::move(levels)), scales_(std::move(level_scales)) {
  if (scales_.size() != levels_->space().num_levels()) {
    throw std::logic_error("feature map needs one scale per level");
  }
}

Eigen::VectorXd FeatureMap::operator()(std::span<const double> x) const {
  Eigen::VectorXd phi(static_cast<Eigen::Index>(dimension()));
  levels_->evaluate(x, {phi.data(), dimension()});
  for (std::size_t l = 0; l < scales_.size(); ++l) {
    const auto begin = static_cast<Eigen::Index>(levels_->offset(l));
    const auto len = static_cast<Eigen::Index>(levels_->offset(l + 1)) - begin;
    phi.segment(begin, len) *= scales_[l];
  }
  return phi;
}

Eigen::MatrixXd FeatureMap::feature_matrix(const PointSet& xs) const {
  const PointSet cx = levels_->space().validate_points(xs);
  Eigen::MatrixXd out(cx.rows(), static_cast<Eigen::Index>(dimension()));
  for (Eigen::Index i = 0; i < cx.rows(); ++i) out.row(i) = (*this)(point_row(cx, i)).transpose();
  return out;
}

FeatureMap default_feature_map(std::shared_ptr<const LevelFeatures> levels, const MaternGeometricKernel& kernel,
                               const KernelParams& params) {
  if (&levels->space() != &kernel.space()) throw std::logic_error("level features belong to a different space");
  const SpectralWeights w = kernel.weights(params);
  std::vector<double> scales(w.weights.size());
  for (std::size_t l = 0; l < scales.size(); ++l) {
    scales[l] = std::sqrt(params.amplitude / w.normalization * w.weights[l]);
  }
  return FeatureMap(std::move(levels), std::move(scales));
}

FeatureMap default_feature_map(const MaternGeometricKernel& kernel, const KernelParams& params) {
  params.validate();
  return default_feature_map(std::make_shared<const LevelFeatures>(kernel.space_ptr()), kernel, params);
}

Eigen::MatrixXd sample_prior(const FeatureMap& features, const PointSet& xs, const SampleSpec& spec) {
  if (spec.num_samples == 0) throw ValidationError("num_samples must be positive");
  const Eigen::MatrixXd phi = features.feature_matrix(xs);
  const Philox root(spec.seed);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(spec.num_samples), phi.rows());
  Eigen::VectorXd zeta(phi.cols());
  for (std::size_t j = 0; j < spec.num_samples; ++j) {
    Philox rng = root.split(j);
    for (Eigen::Index c = 0; c < zeta.size(); ++c) zeta(c) = rng.normal();
    out.row(static_cast<Eigen::Index>(j)) = (phi * zeta).transpose();
  }
  return out;
}

}  // namespace geokernels
