#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "jetcurv/cli.hpp"
#include "jetcurv/runner.hpp"

using namespace jetcurv;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("jetcurv_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

RunConfig tiny_config(const fs::path& outdir) {
  RunConfig c;
  c.grid.points = 12;
  c.grid.radius = 0.4;
  c.jet_orders = {1};
  c.trials = 40;
  c.outputs = outdir.string();
  c.seed = 9;
  return c;
}

}  // namespace

TEST_CASE("polar grid matches the ring definition") {
  GridSpec g;
  g.shape = "polar";
  g.radius = 0.5;
  g.points = 4;
  const auto pts = sample_grid(g);  // one ring, four angles
  REQUIRE(pts.size() == 4);
  CHECK(std::abs(pts[0] - Complex(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(pts[1] - Complex(0.0, 0.5)) < 1e-15);
  CHECK(std::abs(pts[2] - Complex(-0.5, 0.0)) < 1e-15);
  CHECK(std::abs(pts[3] - Complex(0.0, -0.5)) < 1e-15);
}

TEST_CASE("grid validation") {
  GridSpec g;
  g.points = 0;
  CHECK_THROWS_AS((void)sample_grid(g), ConfigError);
  g.points = 16;
  g.shape = "hexagonal";
  CHECK_THROWS_AS((void)sample_grid(g), ConfigError);

  g.shape = "cartesian";
  g.radius = 0.3;
  for (const Complex z : sample_grid(g)) CHECK(std::abs(z) <= 0.3 + 1e-12);
}

TEST_CASE("config parsing, defaults and validation") {
  const RunConfig c = parse_run_config(R"({
    "schema": "jetcurv-config/1",
    "grid": {"shape": "polar", "radius": 0.45, "points": 32, "margin": 0.1},
    "jet_orders": [1, 3],
    "tolerances": {"trace_formula": 1e-7},
    "seed": 11
  })");
  CHECK(c.models == "builtin");
  CHECK(c.grid.radius == 0.45);
  CHECK(c.jet_orders == std::vector<int>{1, 3});
  CHECK(c.tolerances.at("trace_formula") == 1e-7);
  CHECK(c.seed == 11);

  CHECK_THROWS_AS((void)parse_run_config("{"), ConfigError);
  CHECK_THROWS_AS((void)parse_run_config(R"({"jet_orders": []})"), ConfigError);
  CHECK_THROWS_AS((void)parse_run_config(R"({"jet_orders": [-1]})"), ConfigError);
  CHECK_THROWS_AS((void)parse_run_config(R"({"tolerances": {"no_such": 1e-9}})"), ConfigError);
  CHECK_THROWS_AS((void)parse_run_config(R"({"grid": {"points": 0}})"), ConfigError);
}

TEST_CASE("run produces a complete, passing report on the builtin catalog") {
  TempDir tmp;
  const RunConfig config = tiny_config(tmp.path / "out");
  const Catalog catalog = builtin_catalog();
  const RunReport report = run(config, catalog);

  CHECK(report.all_pass);
  // Every configured identity appears exactly once.
  CHECK(report.identities.size() == default_tolerances().size());
  for (const auto& [name, tol] : default_tolerances()) {
    int found = 0;
    for (const auto& ident : report.identities)
      if (ident.name == name) {
        ++found;
        CHECK(ident.evaluations > 0);
      }
    CHECK(found == 1);
  }
  // One CSV per model per jet order, all present on disk.
  CHECK(report.tables.size() == catalog.entries.size() * config.jet_orders.size());
  for (const auto& t : report.tables) CHECK(fs::exists(tmp.path / "out" / t.file));
  CHECK(fs::exists(tmp.path / "out" / "report.json"));
}

TEST_CASE("identical config and seed give byte-identical reports") {
  TempDir tmp;
  const Catalog catalog = builtin_catalog();

  RunConfig a = tiny_config(tmp.path / "a");
  RunConfig b = tiny_config(tmp.path / "b");
  run(a, catalog);
  run(b, catalog);

  CHECK(slurp(tmp.path / "a" / "report.json") == slurp(tmp.path / "b" / "report.json"));
  for (const auto& entry : fs::directory_iterator(tmp.path / "a"))
    CHECK(slurp(entry.path()) == slurp(tmp.path / "b" / entry.path().filename()));

  // A different seed changes the randomized-trial sections.
  RunConfig c = tiny_config(tmp.path / "c");
  c.seed = 10;
  run(c, catalog);
  CHECK(slurp(tmp.path / "a" / "report.json") != slurp(tmp.path / "c" / "report.json"));
}

TEST_CASE("grid exceeding a model domain is rejected with a diagnostic") {
  TempDir tmp;
  RunConfig config = tiny_config(tmp.path / "out");
  config.grid.radius = 0.97;  // kernel/power models reach only 0.95
  CHECK_THROWS_AS((void)run(config, builtin_catalog()), ConfigError);
}

TEST_CASE("cli run exits 0 on the builtin catalog and is deterministic") {
  TempDir tmp;
  spit(tmp.path / "config.json", R"({
    "models": "builtin",
    "grid": {"shape": "polar", "radius": 0.4, "points": 12},
    "jet_orders": [1],
    "trials": 40,
    "outputs": ")" + (tmp.path / "r1").string() + R"(",
    "seed": 5
  })");
  CHECK(run_cli({"run", (tmp.path / "config.json").string()}) == 0);
  CHECK(run_cli({"run", (tmp.path / "config.json").string(), "--output",
                 (tmp.path / "r2").string()}) == 0);
  CHECK(slurp(tmp.path / "r1" / "report.json") == slurp(tmp.path / "r2" / "report.json"));
}

TEST_CASE("cli exit code 1 on identity failure, 2 on bad config") {
  TempDir tmp;
  // An absurdly tight tolerance forces a reported failure (exit 1).
  spit(tmp.path / "tight.json", R"({
    "models": "builtin",
    "grid": {"shape": "polar", "radius": 0.4, "points": 8},
    "jet_orders": [1],
    "trials": 20,
    "tolerances": {"desnanot_jacobi": 1e-30},
    "outputs": ")" + (tmp.path / "t").string() + R"("
  })");
  CHECK(run_cli({"run", (tmp.path / "tight.json").string()}) == 1);
  CHECK(fs::exists(tmp.path / "t" / "report.json"));  // report still written

  // Negative lambda: validation diagnostic, exit 2.
  spit(tmp.path / "badcat.json",
       R"({"schema":"jetcurv-catalog/1","models":[{"id":"bad","model":{"type":"power","lambda":-1}}]})");
  spit(tmp.path / "badcfg.json", R"({"models": ")" + (tmp.path / "badcat.json").string() +
                                     R"(", "outputs": ")" + (tmp.path / "b").string() + R"("})");
  CHECK(run_cli({"run", (tmp.path / "badcfg.json").string()}) == 2);

  // Degenerate constant metric at k = 1: exit 2.
  spit(tmp.path / "degcat.json",
       R"({"schema":"jetcurv-catalog/1","models":[{"id":"const1","model":{"type":"poly","coeffs":[1]}}]})");
  spit(tmp.path / "degcfg.json", R"({"models": ")" + (tmp.path / "degcat.json").string() +
                                     R"(", "jet_orders": [1], "outputs": ")" +
                                     (tmp.path / "d").string() + R"("})");
  CHECK(run_cli({"run", (tmp.path / "degcfg.json").string()}) == 2);

  CHECK(run_cli({"run", (tmp.path / "missing.json").string()}) == 2);
}

TEST_CASE("cli verify-identities and curvature subcommands") {
  TempDir tmp;
  CHECK(run_cli({"verify-identities", "--seed", "3", "--trials", "50"}) == 0);
  CHECK(run_cli({"curvature", "power2", "--k", "1", "--grid", "polar:0.3:8", "--output",
                 tmp.path.string()}) == 0);
  CHECK(fs::exists(tmp.path / "curvature_power2_k1.csv"));
  CHECK(run_cli({"curvature", "no_such_model"}) == 2);
  CHECK(run_cli({"curvature", "power1", "--grid", "bad"}) == 2);
}
