#include <doctest.h>

#include "jetcurv/catalog.hpp"
#include "jetcurv/jsonio.hpp"

using namespace jetcurv;

TEST_CASE("builtin catalog lifts everywhere on the default grid radius") {
  const Catalog c = builtin_catalog();
  CHECK(c.entries.size() >= 8);
  for (const auto& e : c.entries) {
    const MatrixJet j = e.model.lift(Complex(0.4, 0.2), {3, 3});
    CHECK(j.hermitian_defect() < 1e-10 * (1.0 + j.max_abs()));
  }
  CHECK(c.contains("power1"));
  CHECK(c.find("diag12").rank() == 2);
  CHECK_THROWS_AS((void)c.find("no_such_model"), ConfigError);
}

TEST_CASE("catalog round-trip is byte-stable in canonical form") {
  const Catalog c = builtin_catalog();
  const std::string once = serialize_catalog(c);
  const std::string twice = serialize_catalog(parse_catalog(once));
  CHECK(once == twice);
}

TEST_CASE("model nodes round-trip through JSON") {
  const Catalog c = builtin_catalog();
  for (const auto& e : c.entries) {
    const MetricModel parsed = parse_model(serialize_model(e.model));
    CHECK(serialize_model(parsed) == serialize_model(e.model));
    CHECK(parsed.rank() == e.model.rank());
    const Complex z0(0.3, -0.1);
    CHECK((parsed.eval(z0) - e.model.eval(z0)).norm() < 1e-14);
  }
}

TEST_CASE("plain-number coefficients are accepted and canonicalized to pairs") {
  const MetricModel m = parse_model(R"({"type":"scale","phi":[1, 0.5],"base":{"type":"power","lambda":1}})");
  CHECK(serialize_model(m) ==
        R"({"type":"scale","phi":[[1,0],[0.5,0]],"base":{"type":"power","lambda":1}})");
}

TEST_CASE("catalog rejects malformed input") {
  CHECK_THROWS_AS((void)parse_catalog("not json"), ConfigError);
  CHECK_THROWS_AS((void)parse_catalog(R"({"schema":"other","models":[]})"), ConfigError);
  CHECK_THROWS_AS((void)parse_catalog(R"({"schema":"jetcurv-catalog/1","models":[]})"), ConfigError);
  CHECK_THROWS_AS(
      (void)parse_catalog(
          R"({"schema":"jetcurv-catalog/1","models":[{"id":"a","model":{"type":"power","lambda":-2}}]})"),
      ConfigError);
  CHECK_THROWS_AS(
      (void)parse_catalog(
          R"({"schema":"jetcurv-catalog/1","models":[{"id":"a","model":{"type":"nope"}}]})"),
      ConfigError);
  // Duplicate ids.
  CHECK_THROWS_AS(
      (void)parse_catalog(
          R"({"schema":"jetcurv-catalog/1","models":[{"id":"a","model":{"type":"exp"}},{"id":"a","model":{"type":"exp"}}]})"),
      ConfigError);
}

TEST_CASE("17-significant-digit formatting is stable and lossless") {
  const double values[] = {1.0, 0.1, 16.0 / 9.0, 1e-300, -3.25, 12345.678901234567};
  for (const double v : values) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
    CHECK(format_double(std::stod(s)) == s);
  }
}
