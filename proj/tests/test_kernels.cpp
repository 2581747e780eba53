#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "geokernels/errors.hpp"
#include "geokernels/kernels.hpp"
#include "geokernels/spaces.hpp"
#include "oracles.hpp"

using namespace geokernels;

namespace {

PointSet axis_points() {
  PointSet xs(3, 3);
  xs << 0, 0, 1, 0, 1, 0, 1, 0, 0;
  return xs;
}

PointSet node_points(std::size_t n) {
  PointSet xs(static_cast<Eigen::Index>(n), 1);
  for (Eigen::Index i = 0; i < xs.rows(); ++i) xs(i, 0) = static_cast<double>(i);
  return xs;
}

std::vector<std::shared_ptr<const DiscreteSpectrumSpace>> all_spaces() {
  std::mt19937_64 rng(99);
  return {
      std::make_shared<CircleSpace>(32),
      std::make_shared<HypersphereSpace>(2, 20),
      std::make_shared<HypersphereSpace>(3, 12),
      std::make_shared<SU2Space>(12),
      std::make_shared<GraphSpace>(oracles::random_connected_graph(rng, 12, 0.3)),
      std::make_shared<MeshSpace>(oracles::icosphere(1), 42),
      std::make_shared<ProductSpace>(std::vector<ProductSpace::Factor>{std::make_shared<CircleSpace>(8),
                                                                       std::make_shared<HypersphereSpace>(2, 6)},
                                     40),
  };
}

}  // namespace

TEST_CASE("worked sphere example") {
  const MaternGeometricKernel k(std::make_shared<HypersphereSpace>(2, 30));
  KernelParams p = k.init_params();
  CHECK(p.nu == 2.5);
  CHECK(p.lengthscale == 1.0);
  CHECK(p.amplitude == 1.0);
  const Eigen::MatrixXd kxx = k.kernel_matrix(p, axis_points());
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) {
        CHECK(kxx(i, j) == doctest::Approx(1.0).epsilon(1e-14));
      } else {
        CHECK(std::round(kxx(i, j) * 100.0) / 100.0 == 0.36);
        CHECK(kxx(i, j) == doctest::Approx(0.356).epsilon(1e-3));
      }
    }
  }
}

TEST_CASE("single point gives the amplitude on homogeneous spaces") {
  for (const auto& space : {std::shared_ptr<const DiscreteSpectrumSpace>(std::make_shared<HypersphereSpace>(2, 10)),
                            std::shared_ptr<const DiscreteSpectrumSpace>(std::make_shared<CircleSpace>(10)),
                            std::shared_ptr<const DiscreteSpectrumSpace>(std::make_shared<SU2Space>(10))}) {
    const MaternGeometricKernel k(space);
    std::mt19937_64 rng(1);
    const PointSet x = oracles::random_points(*space, 1, rng);
    const Eigen::MatrixXd m = k.kernel_matrix(KernelParams{1.5, 0.7, 2.5}, x);
    CHECK(m(0, 0) == doctest::Approx(2.5).epsilon(1e-13));
  }
  const MaternGeometricKernel single(std::make_shared<GraphSpace>(GraphData{1, {}}));
  CHECK(single.kernel_matrix(KernelParams{0.5, 3.0, 4.0}, node_points(1))(0, 0) == doctest::Approx(4.0));
}

TEST_CASE("complete graph K3, nu = 1, against the resolvent") {
  const auto data = oracles::complete_graph(3);
  const MaternGeometricKernel k(std::make_shared<GraphSpace>(data));
  const double kappa = 1.3;
  Eigen::MatrixXd ref = (2.0 / (kappa * kappa) * Eigen::MatrixXd::Identity(3, 3) + GraphSpace::laplacian(data)).inverse();
  ref /= ref.diagonal().mean();
  const Eigen::MatrixXd got = k.kernel_matrix(KernelParams{1.0, kappa, 1.0}, node_points(3));
  CHECK((got - ref).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("graph kernel matches a dense eigendecomposition") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 4; ++trial) {
    const auto data = oracles::random_connected_graph(rng, 10, 0.25);
    const MaternGeometricKernel k(std::make_shared<GraphSpace>(data));
    for (double nu : {0.5, 2.5, KernelParams::kInfinity}) {
      const Eigen::MatrixXd ref = oracles::graph_kernel_dense(data, nu, 0.9, 1.3);
      const Eigen::MatrixXd got = k.kernel_matrix(KernelParams{nu, 0.9, 1.3}, node_points(10));
      CHECK((got - ref).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("kernel_diag") {
  SUBCASE("sphere") {
    const MaternGeometricKernel k(std::make_shared<HypersphereSpace>(2, 15));
    std::mt19937_64 rng(3);
    const auto d = k.kernel_diag(KernelParams{2.5, 0.5, 3.0}, oracles::random_points(k.space(), 20, rng));
    for (Eigen::Index i = 0; i < d.size(); ++i) CHECK(d(i) == doctest::Approx(3.0).epsilon(1e-13));
  }
  SUBCASE("graph mean diagonal") {
    std::mt19937_64 rng(3);
    const MaternGeometricKernel k(std::make_shared<GraphSpace>(oracles::random_connected_graph(rng, 9, 0.2)));
    const auto d = k.kernel_diag(KernelParams{1.5, 2.0, 0.8}, node_points(9));
    CHECK(d.mean() == doctest::Approx(0.8).epsilon(1e-12));
  }
  SUBCASE("star graph: center and leaves differ") {
    // Center + 4 leaves, ν = 5/2, κ = 1; frozen from an independent dense computation.
    const MaternGeometricKernel k(std::make_shared<GraphSpace>(oracles::star_graph(4)));
    const auto d = k.kernel_diag(KernelParams{2.5, 1.0, 1.0}, node_points(5));
    CHECK(d(0) == doctest::Approx(0.5545090947457286).epsilon(1e-10));
    for (int i = 1; i < 5; ++i) CHECK(d(i) == doctest::Approx(1.111372726313568).epsilon(1e-10));
    CHECK(d.mean() == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("mesh mass-weighted mean") {
    auto space = std::make_shared<MeshSpace>(oracles::icosphere(1), 30);
    const MaternGeometricKernel k(space);
    const auto d = k.kernel_diag(KernelParams{1.5, 0.5, 2.0}, node_points(space->num_vertices()));
    CHECK(space->vertex_measure().dot(d) == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("circle heat kernel is a wrapped Gaussian") {
  const MaternGeometricKernel k(std::make_shared<CircleSpace>(64));
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (double kappa : {0.3, 0.6, 1.0}) {
    const double norm = oracles::wrapped_gaussian(0.0, kappa);
    for (int i = 0; i < 20; ++i) {
      const double a = angle(rng), b = angle(rng);
      const double got = k.evaluate(KernelParams{KernelParams::kInfinity, kappa, 1.0}, std::vector<double>{a},
                                    std::vector<double>{b});
      CHECK(std::abs(got - oracles::wrapped_gaussian(a - b, kappa) / norm) < 1e-8);
    }
  }
}

TEST_CASE("kernel matrix properties on every space") {
  const std::vector<double> nus{0.5, 1.5, 2.5, KernelParams::kInfinity};
  const std::vector<double> kappas{0.3, 1.0, 3.0};
  std::mt19937_64 rng(12);
  for (const auto& space : all_spaces()) {
    CAPTURE(space->name());
    const MaternGeometricKernel k(space);
    const PointSet xs = oracles::random_points(*space, 15, rng);
    const PointSet ys = oracles::random_points(*space, 4, rng);
    for (double nu : nus) {
      for (double kappa : kappas) {
        const KernelParams p{nu, kappa, 1.0};
        const Eigen::MatrixXd kxx = k.kernel_matrix(p, xs);
        CHECK(kxx == kxx.transpose());
        const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(kxx).eigenvalues().minCoeff();
        CHECK(min_eig >= -1e-8 * kxx.trace());

        const Eigen::MatrixXd scaled = k.kernel_matrix(KernelParams{nu, kappa, 3.5}, xs);
        CHECK((scaled - 3.5 * kxx).cwiseAbs().maxCoeff() <= 1e-14 * 3.5 * kxx.cwiseAbs().maxCoeff());

        const Eigen::MatrixXd kxy = k.kernel_matrix(p, xs, ys);
        for (Eigen::Index i = 0; i < xs.rows(); i += 3) {
          for (Eigen::Index j = 0; j < ys.rows(); ++j) {
            CHECK(kxy(i, j) == k.evaluate(p, point_row(xs, i), point_row(ys, j)));
          }
        }
        CHECK(k.kernel_diag(p, xs) == kxx.diagonal());
      }
    }
  }
}

TEST_CASE("kernel rejects invalid points and parameters") {
  const MaternGeometricKernel k(std::make_shared<HypersphereSpace>(2, 5));
  PointSet bad(1, 3);
  bad << 2.0, 0.0, 0.0;
  CHECK_THROWS_AS(k.kernel_matrix(KernelParams{}, bad), ValidationError);
  PointSet wide(1, 4);
  wide << 1.0, 0.0, 0.0, 0.0;
  CHECK_THROWS_AS(k.kernel_matrix(KernelParams{}, wide), ValidationError);
  CHECK_THROWS_AS(k.kernel_matrix(KernelParams{-1.0, 1.0, 1.0}, axis_points()), DomainError);
  CHECK_THROWS_AS(k.kernel_matrix(KernelParams{1.0, 1.0, 0.0}, axis_points()), DomainError);
}

TEST_CASE("product kernel") {
  auto c1 = std::make_shared<CircleSpace>(12);
  auto c2 = std::make_shared<CircleSpace>(12);
  const ProductGeometricKernel pk({MaternGeometricKernel(c1), MaternGeometricKernel(c2)});
  CHECK(pk.point_width() == 2);
  std::mt19937_64 rng(30);
  PointSet xs(6, 2);
  for (Eigen::Index i = 0; i < 6; ++i) {
    xs(i, 0) = std::uniform_real_distribution<double>(0.0, 6.28)(rng);
    xs(i, 1) = std::uniform_real_distribution<double>(0.0, 6.28)(rng);
  }

  SUBCASE("coincident points give the amplitude") {
    const std::vector<KernelParams> fp{KernelParams{1.5, 0.4, 9.0}, KernelParams{KernelParams::kInfinity, 2.0, 1.0}};
    const auto d = pk.kernel_diag(fp, 2.2, xs);
    for (Eigen::Index i = 0; i < 6; ++i) CHECK(d(i) == doctest::Approx(2.2).epsilon(1e-13));
  }
  SUBCASE("heat kernel factorizes over the product space") {
    const MaternGeometricKernel on_product(std::make_shared<ProductSpace>(std::vector<ProductSpace::Factor>{c1, c2}));
    const KernelParams heat{KernelParams::kInfinity, 0.8, 1.0};
    const std::vector<KernelParams> fp{heat, heat};
    const Eigen::MatrixXd a = pk.kernel_matrix(fp, 1.4, xs);
    const Eigen::MatrixXd b = on_product.kernel_matrix(KernelParams{KernelParams::kInfinity, 0.8, 1.4}, xs);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-8);
  }
  SUBCASE("a very long lengthscale factor is nearly constant") {
    const std::vector<KernelParams> fp{KernelParams{2.5, 0.7, 1.0}, KernelParams{2.5, 1e3, 1.0}};
    const Eigen::MatrixXd a = pk.kernel_matrix(fp, 1.0, xs);
    const MaternGeometricKernel k1(c1);
    const Eigen::MatrixXd b = k1.kernel_matrix(KernelParams{2.5, 0.7, 1.0}, PointSet(xs.col(0)));
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-3);
  }
  SUBCASE("arity errors") {
    const std::vector<KernelParams> one{KernelParams{}};
    CHECK_THROWS_AS(pk.kernel_matrix(one, 1.0, xs), ValidationError);
    const std::vector<KernelParams> two{KernelParams{}, KernelParams{}};
    CHECK_THROWS_AS(pk.kernel_matrix(two, 1.0, PointSet(xs.col(0))), ValidationError);
    CHECK_THROWS_AS(pk.kernel_matrix(two, -1.0, xs), DomainError);
    CHECK_THROWS_AS(ProductGeometricKernel({MaternGeometricKernel(c1)}), ValidationError);
  }
}
