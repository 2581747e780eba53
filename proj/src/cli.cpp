#include "geokernels/cli.hpp"

#include <algorithm>
#include <charconv>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geokernels/errors.hpp"
#include "geokernels/features.hpp"
#include "geokernels/gp.hpp"
#include "geokernels/io.hpp"
#include "geokernels/kernels.hpp"
#include "geokernels/spaces.hpp"

namespace geokernels {

namespace {

/// Bad invocation: unknown space, missing required input file, ...
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string space;
  int dim = 2;
  std::string graph;
  std::string mesh;
  std::string factors;
  std::optional<std::size_t> levels;
  std::string nu = "2.5";
  double lengthscale = 1.0;
  double amplitude = 1.0;
  std::string x;
  std::string y;
  std::string train;
  std::string targets;
  double noise = 0.0;
  double jitter = 0.0;
  std::size_t num_samples = 1;
  std::uint64_t seed = 0;
  std::string out;
};

constexpr std::size_t kCircleLevels = 64;
constexpr std::size_t kSphereLevels = 30;
constexpr std::size_t kDiscreteLevels = 500;
constexpr std::size_t kProductLevels = 200;

double parse_nu(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return KernelParams::kInfinity;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw UsageError("--nu expects a number or 'inf'");
  return v;
}

std::shared_ptr<const DiscreteSpectrumSpace> build_space(const std::string& kind, std::optional<std::size_t> levels,
                                                         const Options& opt, bool allow_product) {
  if (kind == "circle") return std::make_shared<CircleSpace>(levels.value_or(kCircleLevels));
  if (kind == "hypersphere") return std::make_shared<HypersphereSpace>(opt.dim, levels.value_or(kSphereLevels));
  if (kind == "su2") return std::make_shared<SU2Space>(levels.value_or(kSphereLevels));
  if (kind == "graph") {
    if (opt.graph.empty()) throw UsageError("graph space needs --graph FILE");
    const GraphData g = io::parse_graph_edgelist(io::read_file(opt.graph));
    return std::make_shared<GraphSpace>(g, levels.value_or(std::min(g.num_nodes, kDiscreteLevels)));
  }
  if (kind == "mesh") {
    if (opt.mesh.empty()) throw UsageError("mesh space needs --mesh FILE");
    const MeshData m = io::parse_off_mesh(io::read_file(opt.mesh));
    return std::make_shared<MeshSpace>(m, levels.value_or(std::min(m.vertices.size(), kDiscreteLevels)));
  }
  if (kind == "product" && allow_product) {
    // --factors "circle,hypersphere:10,graph"; the optional ":L" sets factor levels.
    std::vector<ProductSpace::Factor> factors;
    std::size_t start = 0;
    while (start <= opt.factors.size() && !opt.factors.empty()) {
      const auto end = opt.factors.find(',', start);
      const std::string item = opt.factors.substr(start, end == std::string::npos ? std::string::npos : end - start);
      const auto colon = item.find(':');
      std::optional<std::size_t> factor_levels;
      if (colon != std::string::npos) {
        std::size_t v = 0;
        const char* first = item.data() + colon + 1;
        const auto [ptr, ec] = std::from_chars(first, item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size()) throw UsageError("bad factor spec '" + item + "'");
        factor_levels = v;
      }
      factors.push_back(build_space(item.substr(0, colon), factor_levels, opt, false));
      if (end == std::string::npos) break;
      start = end + 1;
    }
    if (factors.size() < 2) throw UsageError("product space needs --factors with at least two entries");
    std::size_t grid = 1;
    for (const auto& f : factors) grid = std::min<std::size_t>(grid * f->num_levels(), std::size_t{1} << 40);
    return std::make_shared<ProductSpace>(std::move(factors), levels.value_or(std::min(grid, kProductLevels)));
  }
  throw UsageError("unknown space '" + kind + "'");
}

PointSet read_points(const std::string& path, const DiscreteSpectrumSpace& space, const char* flag) {
  if (path.empty()) throw UsageError(std::string("missing ") + flag + " FILE");
  return io::parse_points_csv(io::read_file(path), space);
}

void emit(const Eigen::MatrixXd& m, const Options& opt) {
  if (opt.out.empty()) {
    std::cout << io::format_matrix_csv(m);
  } else {
    io::write_matrix_csv(m, opt.out);
  }
}

KernelParams kernel_params(const Options& opt) {
  KernelParams p{parse_nu(opt.nu), opt.lengthscale, opt.amplitude};
  p.validate();
  return p;
}

void run(const std::string& command, const Options& opt) {
  const auto space = build_space(opt.space, opt.levels, opt, true);
  if (command == "eig") {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(space->num_levels()), 2);
    for (const Level& l : space->levels()) {
      m(static_cast<Eigen::Index>(l.index), 0) = l.eigenvalue;
      m(static_cast<Eigen::Index>(l.index), 1) = static_cast<double>(l.dimension);
    }
    emit(m, opt);
    return;
  }

  const MaternGeometricKernel kernel(space);
  const KernelParams params = kernel_params(opt);
  if (command == "kernel") {
    const PointSet xs = read_points(opt.x, *space, "--x");
    emit(opt.y.empty() ? kernel.kernel_matrix(params, xs)
                       : kernel.kernel_matrix(params, xs, read_points(opt.y, *space, "--y")),
         opt);
  } else if (command == "features") {
    const PointSet xs = read_points(opt.x, *space, "--x");
    emit(default_feature_map(kernel, params).feature_matrix(xs), opt);
  } else if (command == "sample") {
    const PointSet xs = read_points(opt.x, *space, "--x");
    emit(sample_prior(default_feature_map(kernel, params), xs, SampleSpec{opt.seed, opt.num_samples}), opt);
  } else if (command == "posterior") {
    RegressionProblem problem;
    problem.train_points = read_points(opt.train, *space, "--train");
    if (opt.targets.empty()) throw UsageError("missing --targets FILE");
    const Eigen::MatrixXd y = io::parse_matrix_csv(io::read_file(opt.targets));
    if (y.rows() > 0 && y.cols() != 1) throw ValidationError("targets file must have a single column");
    problem.targets = y.rows() > 0 ? Eigen::VectorXd(y.col(0)) : Eigen::VectorXd();
    problem.noise = opt.noise;
    problem.jitter = opt.jitter;
    const PointSet xs = read_points(opt.x, *space, "--x");
    const Posterior post = posterior(kernel, params, problem, xs);
    Eigen::MatrixXd m(post.mean.size(), post.mean.size() + 1);
    m.col(0) = post.mean;
    m.rightCols(post.mean.size()) = post.cov;
    emit(m, opt);
  }
}

void add_common_options(CLI::App& sub, Options& opt) {
  sub.add_option("--space", opt.space, "circle | hypersphere | su2 | graph | mesh | product")->required();
  sub.add_option("--dim", opt.dim, "hypersphere dimension n (S^n)");
  sub.add_option("--graph", opt.graph, "edge-list file");
  sub.add_option("--mesh", opt.mesh, "OFF mesh file");
  sub.add_option("--factors", opt.factors, "product factors, e.g. circle,hypersphere:10");
  sub.add_option("--levels", opt.levels, "number of retained spectral levels");
  sub.add_option("--out", opt.out, "output CSV (stdout when omitted)");
}

void add_kernel_options(CLI::App& sub, Options& opt) {
  sub.add_option("--nu", opt.nu, "smoothness, or 'inf' for the heat kernel");
  sub.add_option("--lengthscale", opt.lengthscale, "lengthscale kappa");
  sub.add_option("--amplitude", opt.amplitude, "amplitude sigma^2");
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Matérn and heat kernels on discrete-spectrum spaces", "geokernels"};
  app.require_subcommand(1);
  Options opt;

  auto* eig = app.add_subcommand("eig", "dump eigenvalue and multiplicity per level");
  add_common_options(*eig, opt);

  auto* kernel = app.add_subcommand("kernel", "kernel matrix K(x, y)");
  add_common_options(*kernel, opt);
  add_kernel_options(*kernel, opt);
  kernel->add_option("--x", opt.x, "points CSV")->required();
  kernel->add_option("--y", opt.y, "second points CSV (defaults to --x)");

  auto* features = app.add_subcommand("features", "feature matrix, one row per point");
  add_common_options(*features, opt);
  add_kernel_options(*features, opt);
  features->add_option("--x", opt.x, "points CSV")->required();

  auto* sample = app.add_subcommand("sample", "prior samples, one row per sample");
  add_common_options(*sample, opt);
  add_kernel_options(*sample, opt);
  sample->add_option("--x", opt.x, "points CSV")->required();
  sample->add_option("--num-samples", opt.num_samples, "number of samples")->check(CLI::PositiveNumber);
  sample->add_option("--seed", opt.seed, "random seed");

  auto* post = app.add_subcommand("posterior", "posterior mean (column 0) and covariance at --x");
  add_common_options(*post, opt);
  add_kernel_options(*post, opt);
  post->add_option("--x", opt.x, "test points CSV")->required();
  post->add_option("--train", opt.train, "training points CSV")->required();
  post->add_option("--targets", opt.targets, "training targets CSV, one per line")->required();
  post->add_option("--noise", opt.noise, "observation noise variance");
  post->add_option("--jitter", opt.jitter, "diagonal jitter added to K + noise");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    run(command, opt);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitData;
  } catch (const ValidationError& e) {
    std::cerr << "invalid data: " << e.what() << '\n';
    return kExitData;
  } catch (const DomainError& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace geokernels
