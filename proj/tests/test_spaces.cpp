#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <vector>

#include "geokernels/errors.hpp"
#include "geokernels/gegenbauer.hpp"
#include "geokernels/kernels.hpp"
#include "geokernels/spaces.hpp"
#include "oracles.hpp"

using namespace geokernels;

namespace {

std::vector<double> gl(const DiscreteSpectrumSpace& s, std::span<const double> x, std::span<const double> y) {
  std::vector<double> out(s.num_levels());
  s.level_values(x, y, out);
  return out;
}

// |G_l(x,x') − Σ_s f_{l,s}(x) f_{l,s}(x')| ≤ 1e-10 d_l and exact symmetry at random pairs.
void check_level_identity(const DiscreteSpectrumSpace& space, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const PointSet xs = oracles::random_points(space, 50, rng);
  const PointSet ys = oracles::random_points(space, 50, rng);
  std::vector<double> fx(space.total_dimension()), fy(space.total_dimension());
  for (Eigen::Index i = 0; i < 50; ++i) {
    const auto g = gl(space, point_row(xs, i), point_row(ys, i));
    const auto gt = gl(space, point_row(ys, i), point_row(xs, i));
    CHECK(g == gt);
    if (!space.has_eigenfunctions()) continue;
    space.eigenfunctions(point_row(xs, i), fx);
    space.eigenfunctions(point_row(ys, i), fy);
    std::size_t pos = 0;
    for (std::size_t l = 0; l < space.num_levels(); ++l) {
      double sum = 0.0;
      for (std::size_t s = 0; s < space.levels()[l].dimension; ++s, ++pos) sum += fx[pos] * fy[pos];
      CHECK(std::abs(g[l] - sum) <= 1e-10 * static_cast<double>(space.levels()[l].dimension));
    }
  }
}

}  // namespace

TEST_CASE("circle levels") {
  const CircleSpace c(4);
  REQUIRE(c.num_levels() == 4);
  CHECK(c.levels()[0].eigenvalue == 0.0);
  CHECK(c.levels()[1].eigenvalue == 1.0);
  CHECK(c.levels()[2].eigenvalue == 4.0);
  CHECK(c.levels()[3].eigenvalue == 9.0);
  CHECK(c.levels()[0].dimension == 1);
  CHECK(c.levels()[3].dimension == 2);
  CHECK(c.total_dimension() == 7);
  const std::vector<double> x{1.234};
  const auto g = gl(c, x, x);
  CHECK(g[0] == 1.0);
  for (std::size_t l = 1; l < 4; ++l) CHECK(g[l] == 2.0);
  CHECK(c.n_dim() == 1);
  check_level_identity(c, 1);
  CHECK_THROWS_AS(CircleSpace(0), ValidationError);
}

TEST_CASE("circle points wrap into [0, 2pi)") {
  const CircleSpace c(2);
  CHECK(c.validate_point(std::vector<double>{-std::numbers::pi / 2})[0] ==
        doctest::Approx(1.5 * std::numbers::pi));
  CHECK(c.validate_point(std::vector<double>{7.0})[0] == doctest::Approx(7.0 - 2 * std::numbers::pi));
  CHECK_THROWS_AS(c.validate_point(std::vector<double>{NAN}), ValidationError);
  CHECK_THROWS_AS(c.validate_point(std::vector<double>{1.0, 2.0}), ValidationError);
}

TEST_CASE("gegenbauer") {
  CHECK(gegenbauer(2, 0.5, 1.0) == doctest::Approx(1.0));
  CHECK(gegenbauer(2, 0.5, 0.0) == doctest::Approx(-0.5));
  // C_l^α(1) = binom(l + 2α − 1, l)
  CHECK(gegenbauer(4, 1.5, 1.0) == doctest::Approx(15.0));  // binom(6, 4)
  CHECK(gegenbauer(3, 1.0, 1.0) == doctest::Approx(4.0));
  CHECK(gegenbauer(0, 2.0, 0.3) == 1.0);

  // Chebyshev U identity: C_3^1(cos θ) = sin 4θ / sin θ.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0.01, std::numbers::pi - 0.01);
  for (int i = 0; i < 100; ++i) {
    const double th = angle(rng);
    CHECK(gegenbauer(3, 1.0, std::cos(th)) == doctest::Approx(std::sin(4 * th) / std::sin(th)).epsilon(1e-12));
  }

  std::vector<double> all(6);
  gegenbauer_all(0.5, 0.3, all);
  for (int l = 0; l < 6; ++l) CHECK(all[static_cast<std::size_t>(l)] == doctest::Approx(gegenbauer(l, 0.5, 0.3)));

  CHECK_THROWS_AS(gegenbauer(2, 0.5, 1.1), DomainError);
  CHECK_NOTHROW(gegenbauer(2, 0.5, 1.0 + 1e-10));
  CHECK_THROWS_AS(gegenbauer(-1, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(gegenbauer(2, 0.0, 0.0), DomainError);
}

TEST_CASE("hypersphere levels") {
  const HypersphereSpace s2(2, 6);
  for (std::size_t l = 0; l < 6; ++l) {
    CHECK(s2.levels()[l].dimension == 2 * l + 1);
    CHECK(s2.levels()[l].eigenvalue == static_cast<double>(l * (l + 1)));
  }
  const std::vector<double> x{0.6, 0.0, 0.8};
  CHECK(gl(s2, x, x)[3] == doctest::Approx(7.0));
  CHECK(s2.n_dim() == 2);

  const HypersphereSpace s3(3, 5);
  for (std::size_t l = 0; l < 5; ++l) CHECK(s3.levels()[l].dimension == (l + 1) * (l + 1));
  const HypersphereSpace s4(4, 4);
  // d_l on S⁴: (2l+3)(l+1)(l+2)/6 → 1, 5, 14, 30
  CHECK(s4.levels()[1].dimension == 5);
  CHECK(s4.levels()[2].dimension == 14);
  CHECK(s4.levels()[3].dimension == 30);

  check_level_identity(s2, 2);
  CHECK_THROWS_AS(HypersphereSpace(1, 4), ValidationError);
  CHECK_THROWS_AS(HypersphereSpace(2, 0), ValidationError);
}

TEST_CASE("sphere addition theorem against real spherical harmonics") {
  const HypersphereSpace s2(2, 11);
  std::mt19937_64 rng(11);
  for (int pair = 0; pair < 30; ++pair) {
    const Eigen::Vector3d x = oracles::random_unit3(rng);
    const Eigen::Vector3d y = oracles::random_unit3(rng);
    const auto g = gl(s2, std::span<const double>(x.data(), 3), std::span<const double>(y.data(), 3));
    for (int l = 0; l <= 10; ++l) {
      const auto yx = oracles::real_spherical_harmonics(l, x);
      const auto yy = oracles::real_spherical_harmonics(l, y);
      double sum = 0.0;
      for (std::size_t m = 0; m < yx.size(); ++m) sum += yx[m] * yy[m];
      CHECK(std::abs(g[static_cast<std::size_t>(l)] - sum) <= 1e-10 * (2 * l + 1));
    }
  }
}

TEST_CASE("sphere point validation") {
  const HypersphereSpace s2(2, 3);
  const auto p = s2.validate_point(std::vector<double>{1.0000005, 0.0, 0.0});
  CHECK(p[0] == 1.0);
  CHECK_THROWS_AS(s2.validate_point(std::vector<double>{0.0, 0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(s2.validate_point(std::vector<double>{1.01, 0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(s2.validate_point(std::vector<double>{1.0, 0.0}), ValidationError);
}

TEST_CASE("su2 levels") {
  const SU2Space g(4);
  CHECK(g.levels()[0].eigenvalue == 0.0);
  CHECK(g.levels()[1].eigenvalue == 3.0);
  CHECK(g.levels()[2].eigenvalue == 8.0);
  CHECK(g.levels()[3].eigenvalue == 15.0);
  const std::vector<double> e{1.0, 0.0, 0.0, 0.0};
  const auto at_identity = gl(g, e, e);
  for (std::size_t l = 0; l < 4; ++l) {
    CHECK(g.levels()[l].dimension == (l + 1) * (l + 1));
    CHECK(at_identity[l] == static_cast<double>((l + 1) * (l + 1)));
    CHECK(SU2Space::character(l, 1.0) == static_cast<double>(l + 1));
    CHECK(SU2Space::character(l, -1.0) == doctest::Approx((l % 2 ? -1.0 : 1.0) * (l + 1)));
  }
  const double th = 0.7;
  CHECK(SU2Space::character(5, std::cos(th)) == doctest::Approx(std::sin(6 * th) / std::sin(th)).epsilon(1e-13));
  CHECK_THROWS_AS(g.validate_point(std::vector<double>{1.0, 1.0, 0.0, 0.0}), ValidationError);
  CHECK(g.n_dim() == 3);
  check_level_identity(g, 3);
}

TEST_CASE("su2 kernel equals the S3 kernel") {
  auto su2 = std::make_shared<SU2Space>(20);
  auto s3 = std::make_shared<HypersphereSpace>(3, 20);
  const MaternGeometricKernel ka(su2), kb(s3);
  std::mt19937_64 rng(5);
  const PointSet xs = oracles::random_points(*su2, 20, rng);
  const PointSet ys = oracles::random_points(*su2, 20, rng);
  for (const KernelParams& p : {KernelParams{0.5, 0.3, 1.0}, KernelParams{2.5, 1.0, 2.0},
                                KernelParams{KernelParams::kInfinity, 3.0, 1.0}}) {
    for (Eigen::Index i = 0; i < 20; ++i) {
      CHECK(ka.evaluate(p, point_row(xs, i), point_row(ys, i)) ==
            doctest::Approx(kb.evaluate(p, point_row(xs, i), point_row(ys, i))).epsilon(1e-10));
    }
  }
}

TEST_CASE("graph data validation") {
  CHECK_THROWS_AS((GraphData{2, {{0, 0, 1.0}}}.validate()), ValidationError);
  CHECK_THROWS_AS((GraphData{2, {{0, 2, 1.0}}}.validate()), ValidationError);
  CHECK_THROWS_AS((GraphData{2, {{0, 1, -1.0}}}.validate()), ValidationError);
  CHECK_THROWS_AS((GraphData{2, {{0, 1, 1.0}, {1, 0, 2.0}}}.validate()), ValidationError);
  CHECK_THROWS_AS((GraphData{0, {}}.validate()), ValidationError);
  CHECK_NOTHROW((GraphData{3, {{0, 1, 0.0}}}.validate()));
}

TEST_CASE("graph two nodes") {
  const GraphSpace g(GraphData{2, {{0, 1, 1.0}}});
  REQUIRE(g.num_levels() == 2);
  CHECK(g.levels()[0].eigenvalue == doctest::Approx(0.0));
  CHECK(g.levels()[1].eigenvalue == doctest::Approx(2.0));
  const auto& f = g.eigenvectors();
  CHECK(std::abs(f(0, 0)) == doctest::Approx(1.0));
  CHECK(f(0, 0) == doctest::Approx(f(1, 0)));
  CHECK(std::abs(f(0, 1)) == doctest::Approx(1.0));
  CHECK(f(0, 1) == doctest::Approx(-f(1, 1)));
  CHECK(g.n_dim() == 0);
}

TEST_CASE("graph disconnected components give repeated zero levels") {
  const GraphSpace g(GraphData{5, {{0, 1, 1.0}, {2, 3, 1.0}}});
  int zeros = 0;
  for (const auto& l : g.levels()) zeros += l.eigenvalue < 1e-10;
  CHECK(zeros == 3);
}

TEST_CASE("graph eigenvectors orthonormal and Laplacian PSD") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const GraphSpace g(oracles::random_connected_graph(rng, 15, 0.3));
    const auto& f = g.eigenvectors();
    const Eigen::MatrixXd gram = f.transpose() * f / 15.0;
    CHECK((gram - Eigen::MatrixXd::Identity(15, 15)).cwiseAbs().maxCoeff() < 1e-10);
    for (std::size_t l = 1; l < g.num_levels(); ++l) {
      CHECK(g.levels()[l].eigenvalue >= g.levels()[l - 1].eigenvalue);
    }
    CHECK(g.levels().front().eigenvalue >= 0.0);
    check_level_identity(g, static_cast<std::uint64_t>(trial));
  }
}

TEST_CASE("graph truncation") {
  const auto data = oracles::path_graph(6);
  const GraphSpace g(data, 3);
  CHECK(g.num_levels() == 3);
  CHECK_THROWS_AS(GraphSpace(data, 7), ValidationError);
  CHECK_THROWS_AS(GraphSpace(data, 0), ValidationError);
  CHECK_THROWS_AS(g.validate_point(std::vector<double>{6.0}), ValidationError);
  CHECK_THROWS_AS(g.validate_point(std::vector<double>{1.5}), ValidationError);
  CHECK_THROWS_AS(g.validate_point(std::vector<double>{-1.0}), ValidationError);
}

TEST_CASE("graph heat kernel equals the matrix exponential") {
  std::mt19937_64 rng(8);
  const auto data = oracles::random_connected_graph(rng, 8, 0.4);
  auto space = std::make_shared<GraphSpace>(data);
  const MaternGeometricKernel k(space);
  const Eigen::MatrixXd lap = GraphSpace::laplacian(data);
  PointSet nodes(8, 1);
  for (int i = 0; i < 8; ++i) nodes(i, 0) = i;
  for (double kappa : {0.3, 1.0, 3.0}) {
    Eigen::MatrixXd ref = oracles::expm(-0.5 * kappa * kappa * lap);
    ref *= 1.7 / ref.diagonal().mean();
    const Eigen::MatrixXd got = k.kernel_matrix(KernelParams{KernelParams::kInfinity, kappa, 1.7}, nodes);
    CHECK((got - ref).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("mesh data validation") {
  MeshData m = oracles::tetrahedron();
  CHECK_NOTHROW(m.validate());
  MeshData bad = m;
  bad.faces[0] = {0, 1, 7};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = m;
  bad.vertices.push_back({5, 5, 5});
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = m;
  bad.faces[0] = {0, 0, 1};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  MeshData flat;
  flat.vertices = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
  flat.faces = {{0, 1, 2}};
  CHECK_THROWS_AS(flat.validate(), ValidationError);
}

TEST_CASE("mesh Laplacian") {
  SUBCASE("tetrahedron: constant ground state") {
    const MeshSpace s(oracles::tetrahedron(), 4);
    CHECK(s.levels()[0].eigenvalue == doctest::Approx(0.0).epsilon(1e-12));
    std::vector<double> f(4);
    for (int v = 0; v < 4; ++v) {
      const double x[] = {static_cast<double>(v)};
      s.eigenfunctions(x, f);
      CHECK(std::abs(f[0]) == doctest::Approx(1.0));
    }
    CHECK(s.n_dim() == 2);
    CHECK(s.vertex_measure().sum() == doctest::Approx(1.0));
  }
  SUBCASE("stiffness is symmetric and annihilates constants") {
    const auto mesh = oracles::icosphere(1);
    const Eigen::MatrixXd l = MeshSpace::stiffness(mesh);
    CHECK((l - l.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((l * Eigen::VectorXd::Ones(l.rows())).cwiseAbs().maxCoeff() < 1e-12);
    const double area = MeshSpace::lumped_mass(mesh).sum();
    CHECK(area > 0.9 * 4.0 * std::numbers::pi);
    CHECK(area < 4.0 * std::numbers::pi);  // inscribed polyhedron
  }
  SUBCASE("icosahedron: first nonzero eigenvalue is triple") {
    const MeshSpace s(oracles::icosphere(0), 12);
    const auto& lv = s.levels();
    CHECK(lv[0].eigenvalue < 1e-10);
    CHECK(lv[1].eigenvalue > 1e-3);
    CHECK(std::abs(lv[2].eigenvalue - lv[1].eigenvalue) < 1e-8);
    CHECK(std::abs(lv[3].eigenvalue - lv[1].eigenvalue) < 1e-8);
    CHECK(lv[4].eigenvalue - lv[3].eigenvalue > 1e-3);
  }
  SUBCASE("level identity and mass-weighted orthonormality") {
    const MeshSpace s(oracles::icosphere(1), 20);
    check_level_identity(s, 4);
    std::vector<double> mean = s.level_mean_diagonal();
    for (double m : mean) CHECK(m == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(MeshSpace(oracles::tetrahedron(), 5), ValidationError);
}

TEST_CASE("product space levels") {
  auto c1 = std::make_shared<CircleSpace>(4);
  auto c2 = std::make_shared<CircleSpace>(4);
  const ProductSpace p({c1, c2});
  CHECK(p.num_levels() == 16);
  CHECK(p.levels()[0].eigenvalue == 0.0);
  CHECK(p.levels()[0].dimension == 1);
  CHECK(p.n_dim() == 2);
  CHECK(p.point_width() == 2);
  // (0,1) precedes (1,0) at λ = 1.
  CHECK(p.level_tuple(1)[0] == 0);
  CHECK(p.level_tuple(1)[1] == 1);
  CHECK(p.level_tuple(2)[0] == 1);
  bool found = false;
  for (std::size_t l = 0; l < p.num_levels(); ++l) {
    if (p.level_tuple(l)[0] == 1 && p.level_tuple(l)[1] == 2) {
      CHECK(p.levels()[l].eigenvalue == 5.0);
      CHECK(p.levels()[l].dimension == 4);
      found = true;
    }
    if (l > 0) CHECK(p.levels()[l].eigenvalue >= p.levels()[l - 1].eigenvalue);
  }
  CHECK(found);
  const std::vector<double> x{0.3, 1.1};
  CHECK(gl(p, x, x)[0] == 1.0);
  check_level_identity(p, 9);

  const ProductSpace truncated({c1, c2}, 5);
  CHECK(truncated.num_levels() == 5);
  CHECK(truncated.levels()[3].eigenvalue == 2.0);  // (1,1)
  CHECK(truncated.levels()[4].eigenvalue == 4.0);
  CHECK_THROWS_AS(ProductSpace({c1}), ValidationError);
  CHECK_THROWS_AS(ProductSpace({c1, c2}, 17), ValidationError);

  auto g = std::make_shared<GraphSpace>(oracles::path_graph(3));
  const ProductSpace mixed({c1, g});
  CHECK(mixed.has_eigenfunctions());
  CHECK_THROWS_AS(mixed.validate_point(std::vector<double>{0.1, 3.0}), ValidationError);
  check_level_identity(mixed, 10);

  const ProductSpace with_sphere({c1, std::make_shared<HypersphereSpace>(2, 3)});
  CHECK_FALSE(with_sphere.has_eigenfunctions());
  CHECK(with_sphere.point_width() == 4);
}
