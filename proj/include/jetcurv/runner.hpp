#pragma once

#include <map>
#include <string>
#include <vector>

#include "jetcurv/catalog.hpp"
#include "jetcurv/identities.hpp"

namespace jetcurv {

struct GridSpec {
  std::string shape = "polar";  // polar | cartesian
  double radius = 0.5;
  int points = 64;
  double margin = 0.05;
};

/**
 * Deterministic sample grid.  Polar: rings at radii radius*(j+1)/J with
 * equally many angles per ring; cartesian: a square lattice filtered to
 * |z| <= radius.  The boundary margin is validated against the model domains
 * by the runner, not here.
 */
std::vector<Complex> sample_grid(const GridSpec& spec);

struct RunConfig {
  std::string models = "builtin";  // catalog path, or "builtin"
  GridSpec grid;
  std::vector<int> jet_orders = {1, 2};
  std::map<std::string, double> tolerances;  // overrides of default_tolerances()
  std::string outputs = "out";
  uint64_t seed = 1;
  int trials = 1000;  // randomized linear-algebra identity trials
};

RunConfig parse_run_config(const std::string& json_text);
/// Loads a config file; a relative catalog path is resolved against the config's directory.
RunConfig load_run_config(const std::string& path);
/// Canonical serialization (hashing and determinism checks).
std::string serialize_run_config(const RunConfig& config);

/// Identity names and their default tolerances (curvature identities 1e-8,
/// linear-algebra identities 1e-9, route cross-checks per module contract).
const std::map<std::string, double>& default_tolerances();

struct IdentityOutcome {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  long long evaluations = 0;
  // location of the maximum residual
  std::string model;  // "" or "id1|id2" for pair identities
  int k = -1;
  Complex at{0.0, 0.0};
  long long trial = -1;
};

struct CurvatureTable {
  std::string model;
  int k = 0;
  std::string file;
};

struct RunReport {
  std::string config_hash;
  uint64_t seed = 0;
  GridSpec grid;
  std::vector<int> jet_orders;
  std::vector<std::string> model_ids;
  std::vector<IdentityOutcome> identities;  // sorted by name, each exactly once
  std::vector<CurvatureTable> tables;
  bool all_pass = false;

  std::string to_json() const;  // canonical bytes
};

/**
 * Full batch run: sweep the grid, evaluate every identity over the catalog,
 * write report.json plus one curvature CSV per model per jet order into
 * config.outputs.  Degenerate metrics and bad configs throw with a diagnostic
 * naming the model and point; identity failures are recorded in the report.
 */
RunReport run(const RunConfig& config, const Catalog& catalog);

/// Loads the catalog named by the config ("builtin" or a path).
Catalog resolve_catalog(const RunConfig& config);

}  // namespace jetcurv
