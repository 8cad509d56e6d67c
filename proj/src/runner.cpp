#include "jetcurv/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jetcurv/jsonio.hpp"
#include "jetcurv/rng.hpp"

namespace jetcurv {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr char kVersion[] = "0.1.0";

void validate_grid(const GridSpec& g) {
  if (g.shape != "polar" && g.shape != "cartesian")
    throw ConfigError("grid shape must be \"polar\" or \"cartesian\"");
  if (!(g.radius > 0.0)) throw ConfigError("grid radius must be positive");
  if (g.points < 1) throw ConfigError("grid needs at least one point");
  if (g.margin < 0.0) throw ConfigError("grid margin must be nonnegative");
}

}  // namespace

std::vector<Complex> sample_grid(const GridSpec& spec) {
  validate_grid(spec);
  std::vector<Complex> out;

  if (spec.shape == "polar") {
    const int rings = std::max(1, static_cast<int>(std::llround(std::sqrt(
                                      static_cast<double>(spec.points)) / 2.0)));
    const int angles = std::max(1, spec.points / rings);
    for (int j = 0; j < rings; ++j) {
      const double r = spec.radius * (j + 1) / rings;
      for (int i = 0; i < angles; ++i) {
        const double th = 2.0 * kPi * i / angles;
        out.emplace_back(r * std::cos(th), r * std::sin(th));
      }
    }
  } else {
    const int side = std::max(3, static_cast<int>(std::ceil(
                                     std::sqrt(spec.points * 4.0 / kPi))));
    const double spacing = 2.0 * spec.radius / (side - 1);
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < side; ++j) {
        const Complex z(-spec.radius + i * spacing, -spec.radius + j * spacing);
        if (std::abs(z) <= spec.radius * (1.0 + 1e-12)) out.push_back(z);
      }
  }

  if (out.empty()) throw ConfigError("empty grid");
  return out;
}

namespace {

using nlohmann::json;

GridSpec parse_grid(const json& j) {
  GridSpec g;
  if (j.contains("shape")) g.shape = j["shape"].get<std::string>();
  if (j.contains("radius")) g.radius = j["radius"].get<double>();
  if (j.contains("points")) g.points = j["points"].get<int>();
  if (j.contains("margin")) g.margin = j["margin"].get<double>();
  return g;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (j.contains("schema") && j["schema"].get<std::string>() != "jetcurv-config/1")
    throw ConfigError("unsupported config schema");

  RunConfig c;
  try {
    if (j.contains("models")) c.models = j["models"].get<std::string>();
    if (j.contains("grid")) c.grid = parse_grid(j["grid"]);
    if (j.contains("jet_orders")) {
      c.jet_orders.clear();
      for (const auto& k : j["jet_orders"]) c.jet_orders.push_back(k.get<int>());
    }
    if (j.contains("tolerances"))
      for (const auto& [name, value] : j["tolerances"].items())
        c.tolerances[name] = value.get<double>();
    if (j.contains("outputs")) c.outputs = j["outputs"].get<std::string>();
    if (j.contains("seed")) c.seed = j["seed"].get<uint64_t>();
    if (j.contains("trials")) c.trials = j["trials"].get<int>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config field: ") + e.what());
  }

  validate_grid(c.grid);
  if (c.jet_orders.empty()) throw ConfigError("jet_orders must not be empty");
  for (const int k : c.jet_orders)
    if (k < 0) throw ConfigError("jet_orders must be nonnegative");
  if (c.trials < 1) throw ConfigError("trials must be positive");
  for (const auto& [name, tol] : c.tolerances) {
    if (!default_tolerances().count(name))
      throw ConfigError("unknown identity \"" + name + "\" in tolerances");
    if (!(tol > 0.0)) throw ConfigError("tolerance for \"" + name + "\" must be positive");
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  RunConfig c = parse_run_config(ss.str());
  if (c.models != "builtin") {
    const std::filesystem::path p(c.models);
    if (p.is_relative()) c.models = (std::filesystem::path(path).parent_path() / p).string();
  }
  return c;
}

namespace {

std::string serialize_config_impl(const RunConfig& c, bool include_outputs) {
  JsonWriter w;
  w.begin_object();
  w.key("schema").value("jetcurv-config/1");
  w.key("models").value(c.models);
  w.key("grid").begin_object();
  w.key("shape").value(c.grid.shape);
  w.key("radius").value(c.grid.radius);
  w.key("points").value(c.grid.points);
  w.key("margin").value(c.grid.margin);
  w.end_object();
  w.key("jet_orders").begin_array();
  for (const int k : c.jet_orders) w.value(k);
  w.end_array();
  w.key("tolerances").begin_object();
  for (const auto& [name, tol] : c.tolerances) w.key(name).value(tol);
  w.end_object();
  if (include_outputs) w.key("outputs").value(c.outputs);
  w.key("seed").value(c.seed);
  w.key("trials").value(c.trials);
  w.end_object();
  return w.str() + "\n";
}

}  // namespace

std::string serialize_run_config(const RunConfig& c) { return serialize_config_impl(c, true); }

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> kDefaults = {
      {"desnanot_jacobi", 1e-9},   {"gram_quotient", 1e-9},
      {"frame_cocycle", 1e-9},     {"metric_transform", 1e-9},
      {"det_recursion", 1e-9},     {"det_curvature", 1e-9},
      {"jet_route_equivalence", 1e-7}, {"trace_formula", 1e-8},
      {"rank_bound", 1e-8},        {"line_jet_structure", 1e-9},
      {"equiv_biconditional", 0.5},
  };
  return kDefaults;
}

namespace {

struct Accumulator {
  IdentityOutcome out;

  explicit Accumulator(const std::string& name, double tol) {
    out.name = name;
    out.tolerance = tol;
  }

  void record(double residual, const std::string& model, int k, Complex at, long long trial) {
    ++out.evaluations;
    if (residual > out.max_residual) {
      out.max_residual = residual;
      out.model = model;
      out.k = k;
      out.at = at;
      out.trial = trial;
    }
  }

  IdentityOutcome finish() {
    out.pass = out.max_residual <= out.tolerance;
    return out;
  }
};

Polynomial random_polynomial(Rng& rng, int degree, bool unit_diagonal) {
  std::vector<Complex> c(static_cast<size_t>(degree) + 1);
  for (auto& x : c) x = 0.5 * rng.cnormal();
  if (unit_diagonal) c[0] += Complex(1.8, 0.0);
  return Polynomial(std::move(c));
}

HoloFrame random_frame(Rng& rng, int rank, int degree) {
  std::vector<std::vector<Polynomial>> rows(static_cast<size_t>(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      rows[static_cast<size_t>(i)].push_back(random_polynomial(rng, degree, i == j));
  return HoloFrame(std::move(rows));
}

std::vector<Complex> subset(const std::vector<Complex>& grid, size_t cap) {
  if (grid.size() <= cap) return grid;
  std::vector<Complex> out;
  const size_t stride = grid.size() / cap;
  for (size_t i = 0; i < grid.size() && out.size() < cap; i += stride) out.push_back(grid[i]);
  return out;
}

double largest_singular_ratio_beyond(const Matrix& m, int n) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() <= n || sv(0) == 0.0) return 0.0;
  return sv(n) / sv(0);
}

std::string csv_filename(const std::string& model, int k) {
  return "curvature_" + model + "_k" + std::to_string(k) + ".csv";
}

void write_curvature_csv(const std::filesystem::path& path, const std::vector<Complex>& grid,
                         const std::vector<Matrix>& thetas) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write CSV file \"" + path.string() + "\"");
  const int dim = static_cast<int>(thetas.front().rows());
  out << "re_z,im_z";
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      out << ",theta_" << i << "_" << j << "_re,theta_" << i << "_" << j << "_im";
  out << "\n";
  for (size_t g = 0; g < grid.size(); ++g) {
    out << format_double(grid[g].real()) << "," << format_double(grid[g].imag());
    const Matrix& th = thetas[g];
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        out << "," << format_double(th(i, j).real()) << "," << format_double(th(i, j).imag());
    out << "\n";
  }
}

[[noreturn]] void rethrow_with_context(const Error& e, const std::string& model, int k, Complex z) {
  std::ostringstream os;
  os << "model \"" << model << "\" k=" << k << " at z=(" << format_double(z.real()) << ","
     << format_double(z.imag()) << "): " << e.what();
  throw Error(os.str());
}

}  // namespace

std::string RunReport::to_json() const {
  JsonWriter w;
  w.begin_object();
  w.key("schema").value("jetcurv-report/1");
  w.key("version").value(kVersion);
  w.key("config_hash").value(config_hash);
  w.key("seed").value(seed);
  w.key("grid").begin_object();
  w.key("shape").value(grid.shape);
  w.key("radius").value(grid.radius);
  w.key("points").value(grid.points);
  w.key("margin").value(grid.margin);
  w.end_object();
  w.key("jet_orders").begin_array();
  for (const int k : jet_orders) w.value(k);
  w.end_array();
  w.key("models").begin_array();
  for (const auto& id : model_ids) w.value(id);
  w.end_array();
  w.key("identities").begin_array();
  for (const auto& ident : identities) {
    w.begin_object();
    w.key("name").value(ident.name);
    w.key("max_residual").value(ident.max_residual);
    w.key("tolerance").value(ident.tolerance);
    w.key("pass").value(ident.pass);
    w.key("evaluations").value(static_cast<long long>(ident.evaluations));
    w.key("argmax").begin_object();
    w.key("model").value(ident.model);
    w.key("k").value(ident.k);
    w.key("trial").value(ident.trial);
    w.key("z").value(ident.at);
    w.end_object();
    w.end_object();
  }
  w.end_array();
  w.key("curvature_tables").begin_array();
  for (const auto& t : tables) {
    w.begin_object();
    w.key("model").value(t.model);
    w.key("k").value(t.k);
    w.key("file").value(t.file);
    w.end_object();
  }
  w.end_array();
  w.key("all_pass").value(all_pass);
  w.end_object();
  return w.str() + "\n";
}

Catalog resolve_catalog(const RunConfig& config) {
  return config.models == "builtin" ? builtin_catalog() : load_catalog(config.models);
}

RunReport run(const RunConfig& config, const Catalog& catalog) {
  validate_grid(config.grid);

  // The grid (with margin) must stay inside every model's usable domain
  // (kernel models refuse lifts above 0.95 of their convergence radius).
  for (const auto& e : catalog.entries) {
    const double limit = e.model.usable_radius();
    if (config.grid.radius * (1.0 + config.grid.margin) >= limit) {
      std::ostringstream os;
      os << "grid radius " << config.grid.radius << " (margin " << config.grid.margin
         << ") exceeds the usable domain of model \"" << e.id << "\"";
      throw ConfigError(os.str());
    }
  }

  std::map<std::string, double> tol(default_tolerances());
  for (const auto& [name, value] : config.tolerances) tol[name] = value;

  const std::vector<Complex> grid = sample_grid(config.grid);
  const std::vector<Complex> frame_grid = subset(grid, 8);
  const std::vector<Complex> pair_grid = subset(grid, 8);

  RunReport report;
  // The hash fingerprints the mathematical content of the run; the output
  // location does not change any computed value.
  report.config_hash = hex64(fnv1a64(serialize_config_impl(config, false)));
  report.seed = config.seed;
  report.grid = config.grid;
  report.jet_orders = config.jet_orders;
  for (const auto& e : catalog.entries) report.model_ids.push_back(e.id);

  const std::filesystem::path outdir(config.outputs);
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) throw ConfigError("cannot create output directory \"" + config.outputs + "\"");

  Accumulator acc_dj("desnanot_jacobi", tol.at("desnanot_jacobi"));
  Accumulator acc_gram("gram_quotient", tol.at("gram_quotient"));
  Accumulator acc_cocycle("frame_cocycle", tol.at("frame_cocycle"));
  Accumulator acc_transform("metric_transform", tol.at("metric_transform"));
  Accumulator acc_recursion("det_recursion", tol.at("det_recursion"));
  Accumulator acc_detcurv("det_curvature", tol.at("det_curvature"));
  Accumulator acc_route("jet_route_equivalence", tol.at("jet_route_equivalence"));
  Accumulator acc_trace("trace_formula", tol.at("trace_formula"));
  Accumulator acc_rank("rank_bound", tol.at("rank_bound"));
  Accumulator acc_linejet("line_jet_structure", tol.at("line_jet_structure"));
  Accumulator acc_equiv("equiv_biconditional", tol.at("equiv_biconditional"));

  // Randomized linear-algebra identities.
  {
    Rng rng(config.seed);
    for (long long t = 0; t < config.trials; ++t) {
      const int n = rng.uniform_int(2, 8);
      Matrix a = rng.gaussian_matrix(n, n);
      if (n >= 3 && t % 4 == 0)  // push the interior block toward singularity
        a.row(0).head(n - 2) = a.row(1).head(n - 2) * (1.0 + 1e-8 * rng.normal());
      acc_dj.record(desnanot_jacobi(a).residual, "", -1, 0.0, t);
    }
    for (long long t = 0; t < config.trials; ++t) {
      const int n = rng.uniform_int(2, 6);
      const Matrix b = rng.gaussian_matrix(n, n);
      const Matrix g = b.adjoint() * b + 1e-3 * Matrix::Identity(n, n);
      for (int r = 1; r < n; ++r)
        acc_gram.record(gram_quotient_check(g, r).residual, "", -1, 0.0, t);
    }
  }

  // Frame cocycle and the metric transformation law.
  {
    Rng rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    for (const auto& e : catalog.entries) {
      const int n = e.model.rank();
      for (int rep = 0; rep < 2; ++rep) {
        const HoloFrame f = random_frame(rng, n, 2);
        const HoloFrame g = random_frame(rng, n, 2);
        const HoloFrame fg = f * g;
        for (const int k : config.jet_orders)
          for (const Complex z : frame_grid) {
            const Matrix lhs = frame_jet(fg, z, k);
            const Matrix rhs = frame_jet(f, z, k) * frame_jet(g, z, k);
            acc_cocycle.record((lhs - rhs).norm() / (1.0 + rhs.norm()), e.id, k, z, -1);
            try {
              acc_transform.record(frame_change_residual(e.model, f, z, k), e.id, k, z, -1);
            } catch (const Error& err) {
              rethrow_with_context(err, e.id, k, z);
            }
          }
      }
    }
  }

  // Grid sweep: curvature tables and the metric identities.
  for (const auto& e : catalog.entries) {
    const int n = e.model.rank();
    for (const int k : config.jet_orders) {
      std::vector<Matrix> thetas;
      thetas.reserve(grid.size());
      for (const Complex z : grid) {
        try {
          const MatrixJet hjet = e.model.lift(z, lift_order(std::max(k, 1)));

          const CurvatureForm jc = jet_curvature_unchecked(hjet, k);
          thetas.push_back(jc.theta);
          acc_route.record(jc.route_discrepancy, e.id, k, z, -1);
          acc_rank.record(largest_singular_ratio_beyond(jc.theta, n), e.id, k, z, -1);

          acc_recursion.record(det_recursion_check(e.model, z, k).residual, e.id, k, z, -1);

          if (k >= 1) {
            acc_trace.record(trace_formula_residual(hjet, k), e.id, k, z, -1);
            if (n == 1) {
              const double scale = jc.theta.norm();
              double cols = 0.0;
              for (int col = 0; col < k; ++col)
                cols = std::max(cols, jc.theta.col(col).norm() / (scale > 0.0 ? scale : 1.0));
              acc_linejet.record(cols, e.id, k, z, -1);
            }
          }
          if (n == 1)
            acc_detcurv.record(det_bundle_curvature_routes(hjet, k).residual, e.id, k, z, -1);
        } catch (const Error& err) {
          rethrow_with_context(err, e.id, k, z);
        }
      }
      const std::string file = csv_filename(e.id, k);
      write_curvature_csv(outdir / file, grid, thetas);
      report.tables.push_back({e.id, k, file});
    }
  }

  // Equivalence biconditional over rank-1 catalog pairs.
  {
    std::vector<const CatalogEntry*> line_models;
    for (const auto& e : catalog.entries)
      if (e.model.rank() == 1) line_models.push_back(&e);
    for (size_t i = 0; i < line_models.size(); ++i)
      for (size_t j = i + 1; j < line_models.size(); ++j) {
        const std::string pair = line_models[i]->id + "|" + line_models[j]->id;
        double residual = 0.0;
        try {
          (void)det_bundle_equiv_test(line_models[i]->model, line_models[j]->model, 1, pair_grid,
                                      1e-8);
        } catch (const InternalInconsistency&) {
          residual = 1.0;
        }
        acc_equiv.record(residual, pair, 1, 0.0, -1);
      }
  }

  report.identities = {acc_dj.finish(),       acc_detcurv.finish(),  acc_recursion.finish(),
                       acc_equiv.finish(),    acc_cocycle.finish(),  acc_gram.finish(),
                       acc_route.finish(),    acc_linejet.finish(),  acc_transform.finish(),
                       acc_rank.finish(),     acc_trace.finish()};
  std::sort(report.identities.begin(), report.identities.end(),
            [](const IdentityOutcome& a, const IdentityOutcome& b) { return a.name < b.name; });

  report.all_pass = true;
  for (const auto& ident : report.identities) report.all_pass = report.all_pass && ident.pass;

  std::ofstream out(outdir / "report.json", std::ios::binary);
  if (!out) throw ConfigError("cannot write report.json");
  out << report.to_json();

  return report;
}

}  // namespace jetcurv
