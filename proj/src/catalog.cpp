#include "jetcurv/catalog.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jetcurv/jsonio.hpp"

namespace jetcurv {

namespace {

using nlohmann::json;

Complex parse_coeff(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw ConfigError("polynomial coefficient must be a number or an [re, im] pair");
}

Polynomial parse_polynomial(const json& j) {
  if (!j.is_array()) throw ConfigError("polynomial must be an array of coefficients");
  std::vector<Complex> coeffs;
  coeffs.reserve(j.size());
  for (const auto& c : j) coeffs.push_back(parse_coeff(c));
  return Polynomial(std::move(coeffs));
}

MetricModel parse_node(const json& j);

HoloFrame parse_frame(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("frame must be a nonempty array of rows");
  std::vector<std::vector<Polynomial>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw ConfigError("frame row must be an array of polynomials");
    std::vector<Polynomial> r;
    for (const auto& p : row) r.push_back(parse_polynomial(p));
    rows.push_back(std::move(r));
  }
  return HoloFrame(std::move(rows));
}

std::vector<double> parse_real_array(const json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw ConfigError(std::string(what) + " must contain numbers only");
    out.push_back(v.get<double>());
  }
  return out;
}

MetricModel parse_node(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw ConfigError("model node must be an object with a \"type\" tag");
  const std::string type = j["type"].get<std::string>();

  if (type == "power") {
    if (!j.contains("lambda") || !j["lambda"].is_number())
      throw ConfigError("power model needs a numeric \"lambda\"");
    return MetricModel::power(j["lambda"].get<double>());
  }
  if (type == "exp") return MetricModel::exponential();
  if (type == "poly") {
    if (!j.contains("coeffs")) throw ConfigError("poly model needs \"coeffs\"");
    return MetricModel::poly(parse_real_array(j["coeffs"], "poly coeffs"));
  }
  if (type == "kernel") {
    if (!j.contains("weights") || !j.contains("tail_ratio") || !j["tail_ratio"].is_number())
      throw ConfigError("kernel model needs \"weights\" and a numeric \"tail_ratio\"");
    return MetricModel::kernel(parse_real_array(j["weights"], "kernel weights"),
                               j["tail_ratio"].get<double>());
  }
  if (type == "diag") {
    if (!j.contains("blocks") || !j["blocks"].is_array() || j["blocks"].empty())
      throw ConfigError("diag model needs a nonempty \"blocks\" array");
    std::vector<MetricModel> blocks;
    for (const auto& b : j["blocks"]) blocks.push_back(parse_node(b));
    return MetricModel::diag(std::move(blocks));
  }
  if (type == "frame") {
    if (!j.contains("frame") || !j.contains("base"))
      throw ConfigError("frame model needs \"frame\" and \"base\"");
    return MetricModel::frame_conj(parse_frame(j["frame"]), parse_node(j["base"]));
  }
  if (type == "scale") {
    if (!j.contains("phi") || !j.contains("base"))
      throw ConfigError("scale model needs \"phi\" and \"base\"");
    return MetricModel::scale(parse_polynomial(j["phi"]), parse_node(j["base"]));
  }
  throw ConfigError("unknown model type \"" + type + "\"");
}

void write_polynomial(JsonWriter& w, const Polynomial& p) {
  w.begin_array();
  for (const Complex c : p.coeffs()) w.value(c);
  w.end_array();
}

void write_node(JsonWriter& w, const MetricModel& model) {
  w.begin_object();
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MetricModel::Power>) {
          w.key("type").value("power");
          w.key("lambda").value(n.lambda);
        } else if constexpr (std::is_same_v<T, MetricModel::Exp>) {
          w.key("type").value("exp");
        } else if constexpr (std::is_same_v<T, MetricModel::Poly>) {
          w.key("type").value("poly");
          w.key("coeffs").begin_array();
          for (const double c : n.coeffs) w.value(c);
          w.end_array();
        } else if constexpr (std::is_same_v<T, MetricModel::Kernel>) {
          w.key("type").value("kernel");
          w.key("weights").begin_array();
          for (const double c : n.weights) w.value(c);
          w.end_array();
          w.key("tail_ratio").value(n.tail_ratio);
        } else if constexpr (std::is_same_v<T, MetricModel::Diag>) {
          w.key("type").value("diag");
          w.key("blocks").begin_array();
          for (const auto& b : n.blocks) write_node(w, b);
          w.end_array();
        } else if constexpr (std::is_same_v<T, MetricModel::FrameConj>) {
          w.key("type").value("frame");
          w.key("frame").begin_array();
          for (int i = 0; i < n.frame.rank(); ++i) {
            w.begin_array();
            for (int j = 0; j < n.frame.rank(); ++j) write_polynomial(w, n.frame.entry(i, j));
            w.end_array();
          }
          w.end_array();
          w.key("base");
          write_node(w, *n.base);
        } else {
          w.key("type").value("scale");
          w.key("phi");
          write_polynomial(w, n.phi);
          w.key("base");
          write_node(w, *n.base);
        }
      },
      model.node());
  w.end_object();
}

}  // namespace

const MetricModel& Catalog::find(const std::string& id) const {
  for (const auto& e : entries)
    if (e.id == id) return e.model;
  throw ConfigError("model \"" + id + "\" not found in the catalog");
}

bool Catalog::contains(const std::string& id) const {
  for (const auto& e : entries)
    if (e.id == id) return true;
  return false;
}

Catalog parse_catalog(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("catalog is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("schema", "") != "jetcurv-catalog/1")
    throw ConfigError("catalog must declare \"schema\": \"jetcurv-catalog/1\"");
  if (!j.contains("models") || !j["models"].is_array())
    throw ConfigError("catalog needs a \"models\" array");

  Catalog catalog;
  for (const auto& entry : j["models"]) {
    if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string() ||
        !entry.contains("model"))
      throw ConfigError("catalog entries need \"id\" and \"model\"");
    const std::string id = entry["id"].get<std::string>();
    if (catalog.contains(id)) throw ConfigError("duplicate model id \"" + id + "\"");
    catalog.entries.push_back({id, parse_node(entry["model"])});
  }
  if (catalog.entries.empty()) throw ConfigError("catalog has no models");
  return catalog;
}

Catalog load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open catalog file \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str());
}

std::string serialize_catalog(const Catalog& catalog) {
  JsonWriter w;
  w.begin_object();
  w.key("schema").value("jetcurv-catalog/1");
  w.key("models").begin_array();
  for (const auto& e : catalog.entries) {
    w.begin_object();
    w.key("id").value(e.id);
    w.key("model");
    write_node(w, e.model);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str() + "\n";
}

MetricModel parse_model(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("model is not valid JSON: ") + e.what());
  }
  return parse_node(j);
}

std::string serialize_model(const MetricModel& model) {
  JsonWriter w;
  write_node(w, model);
  return w.str();
}

Catalog builtin_catalog() {
  Catalog c;
  c.entries.push_back({"power1", MetricModel::power(1.0)});
  c.entries.push_back({"power2", MetricModel::power(2.0)});
  c.entries.push_back({"power3", MetricModel::power(3.0)});
  c.entries.push_back({"exp", MetricModel::exponential()});
  c.entries.push_back({"poly5", MetricModel::poly({1.0, 1.0, 0.5, 0.25, 0.125, 0.0625})});
  c.entries.push_back({"kernel_geo", MetricModel::kernel({1.0, 1.2, 1.5}, 1.0)});
  c.entries.push_back(
      {"scaled_power1",
       MetricModel::scale(Polynomial(std::vector<Complex>{1.0, 0.5}), MetricModel::power(1.0))});
  c.entries.push_back(
      {"diag12", MetricModel::diag({MetricModel::power(1.0), MetricModel::power(2.0)})});
  c.entries.push_back(
      {"diag_pe", MetricModel::diag({MetricModel::power(2.0), MetricModel::exponential()})});

  const HoloFrame upper({{Polynomial(std::vector<Complex>{1.0}), Polynomial::variable()},
                         {Polynomial(), Polynomial(std::vector<Complex>{1.0})}});
  c.entries.push_back(
      {"framed_diag12",
       MetricModel::frame_conj(upper,
                               MetricModel::diag({MetricModel::power(1.0), MetricModel::power(2.0)}))});
  return c;
}

}  // namespace jetcurv
