#include "jetcurv/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "jetcurv/jsonio.hpp"
#include "jetcurv/rng.hpp"
#include "jetcurv/runner.hpp"

namespace jetcurv {

namespace {

void apply_tolerance_overrides(RunConfig& config, const std::vector<std::string>& overrides) {
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--tolerance expects NAME=VALUE, got \"" + item + "\"");
    const std::string name = item.substr(0, eq);
    if (!default_tolerances().count(name))
      throw ConfigError("unknown identity \"" + name + "\" in --tolerance");
    try {
      config.tolerances[name] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("bad tolerance value in \"" + item + "\"");
    }
  }
}

GridSpec parse_grid_option(const std::string& text) {
  // shape:radius:points[:margin]
  GridSpec g;
  std::vector<std::string> parts;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t colon = text.find(':', pos);
    parts.push_back(text.substr(pos, colon == std::string::npos ? std::string::npos : colon - pos));
    if (colon == std::string::npos) break;
    pos = colon + 1;
  }
  if (parts.size() < 3 || parts.size() > 4)
    throw ConfigError("--grid expects SHAPE:RADIUS:POINTS[:MARGIN]");
  try {
    g.shape = parts[0];
    g.radius = std::stod(parts[1]);
    g.points = std::stoi(parts[2]);
    if (parts.size() == 4) g.margin = std::stod(parts[3]);
  } catch (const std::exception&) {
    throw ConfigError("bad --grid value \"" + text + "\"");
  }
  return g;
}

int do_run(const std::string& config_path, const std::string& output_override,
           const std::vector<std::string>& tolerance_overrides) {
  RunConfig config = load_run_config(config_path);
  apply_tolerance_overrides(config, tolerance_overrides);
  if (!output_override.empty()) config.outputs = output_override;

  const Catalog catalog = resolve_catalog(config);
  const RunReport report = run(config, catalog);

  for (const auto& ident : report.identities)
    std::printf("%-22s %s  max residual %.3e  (tolerance %.1e, %lld checks)\n",
                ident.name.c_str(), ident.pass ? "PASS" : "FAIL", ident.max_residual,
                ident.tolerance, ident.evaluations);
  std::printf("report: %s\n",
              (std::filesystem::path(config.outputs) / "report.json").string().c_str());
  return report.all_pass ? 0 : 1;
}

int do_verify_identities(uint64_t seed, int trials) {
  Rng rng(seed);
  double worst_dj = 0.0, worst_gram = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int n = rng.uniform_int(2, 8);
    Matrix a = rng.gaussian_matrix(n, n);
    if (n >= 3 && t % 4 == 0)
      a.row(0).head(n - 2) = a.row(1).head(n - 2) * (1.0 + 1e-8 * rng.normal());
    worst_dj = std::max(worst_dj, desnanot_jacobi(a).residual);
  }
  for (int t = 0; t < trials; ++t) {
    const int n = rng.uniform_int(2, 6);
    const Matrix b = rng.gaussian_matrix(n, n);
    const Matrix g = b.adjoint() * b + 1e-3 * Matrix::Identity(n, n);
    for (int r = 1; r < n; ++r)
      worst_gram = std::max(worst_gram, gram_quotient_check(g, r).residual);
  }

  const bool dj_ok = worst_dj <= 1e-9;
  const bool gram_ok = worst_gram <= 1e-9;
  std::printf("desnanot_jacobi        %s  max residual %.3e over %d trials\n",
              dj_ok ? "PASS" : "FAIL", worst_dj, trials);
  std::printf("gram_quotient          %s  max residual %.3e over %d trials\n",
              gram_ok ? "PASS" : "FAIL", worst_gram, trials);
  return (dj_ok && gram_ok) ? 0 : 1;
}

int do_curvature(const std::string& model_id, const std::string& models_path, int k,
                 const GridSpec& grid, const std::string& output_dir) {
  RunConfig config;
  config.models = models_path;
  const Catalog catalog = resolve_catalog(config);
  const MetricModel& model = catalog.find(model_id);

  const double limit = model.usable_radius();
  if (grid.radius * (1.0 + grid.margin) >= limit)
    throw ConfigError("grid radius exceeds the usable domain of model \"" + model_id + "\"");

  const std::vector<Complex> points = sample_grid(grid);
  std::vector<Matrix> thetas;
  thetas.reserve(points.size());
  for (const Complex z : points)
    thetas.push_back(jet_curvature(model.lift(z, lift_order(std::max(k, 1))), k).theta);

  std::filesystem::create_directories(output_dir);
  const std::filesystem::path file =
      std::filesystem::path(output_dir) / ("curvature_" + model_id + "_k" + std::to_string(k) + ".csv");
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ConfigError("cannot write \"" + file.string() + "\"");
  const int dim = static_cast<int>(thetas.front().rows());
  out << "re_z,im_z";
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      out << ",theta_" << i << "_" << j << "_re,theta_" << i << "_" << j << "_im";
  out << "\n";
  for (size_t g = 0; g < points.size(); ++g) {
    out << format_double(points[g].real()) << "," << format_double(points[g].imag());
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        out << "," << format_double(thetas[g](i, j).real()) << ","
            << format_double(thetas[g](i, j).imag());
    out << "\n";
  }
  std::printf("wrote %s (%zu points, rank %d)\n", file.string().c_str(), points.size(), dim);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"jet-bundle metrics, curvatures and identity verification for "
               "Hermitian holomorphic bundles over planar domains"};
  app.set_version_flag("--version", "jetcurv 0.1.0");
  app.require_subcommand(1);

  // run
  std::string config_path;
  std::string output_override;
  std::vector<std::string> tolerance_overrides;
  CLI::App* cmd_run = app.add_subcommand("run", "run the full identity suite from a config file");
  cmd_run->add_option("config", config_path, "run configuration (JSON)")->required();
  cmd_run->add_option("--output", output_override, "override the output directory");
  cmd_run->add_option("--tolerance", tolerance_overrides, "override NAME=VALUE (repeatable)");

  // verify-identities
  uint64_t seed = 1;
  int trials = 1000;
  CLI::App* cmd_verify =
      app.add_subcommand("verify-identities", "randomized linear-algebra identity trials");
  cmd_verify->add_option("--seed", seed, "PRNG seed");
  cmd_verify->add_option("--trials", trials, "number of random trials")->check(CLI::PositiveNumber);

  // curvature
  std::string model_id;
  std::string models_path = "builtin";
  std::string grid_text = "polar:0.5:64:0.05";
  std::string output_dir = ".";
  int k = 1;
  CLI::App* cmd_curv =
      app.add_subcommand("curvature", "tabulate the jet-bundle curvature of one model");
  cmd_curv->add_option("model", model_id, "model id from the catalog")->required();
  cmd_curv->add_option("--models", models_path, "catalog file, or \"builtin\"");
  cmd_curv->add_option("--k", k, "jet order")->check(CLI::NonNegativeNumber);
  cmd_curv->add_option("--grid", grid_text, "SHAPE:RADIUS:POINTS[:MARGIN]");
  cmd_curv->add_option("--output", output_dir, "output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (cmd_run->parsed()) return do_run(config_path, output_override, tolerance_overrides);
    if (cmd_verify->parsed()) return do_verify_identities(seed, trials);
    return do_curvature(model_id, models_path, k, parse_grid_option(grid_text), output_dir);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<size_t>(argc) - 1);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace jetcurv
