#pragma once

#include <string>
#include <vector>

#include "jetcurv/models.hpp"

namespace jetcurv {

struct CatalogEntry {
  std::string id;
  MetricModel model;
};

/**
 * Named collection of metric models.  The JSON encoding is a tagged union per
 * node ("type": power | exp | poly | kernel | diag | frame | scale);
 * polynomial coefficients are [re, im] pairs in canonical form, plain numbers
 * are accepted on input.  serialize() emits the canonical form, so
 * parse -> serialize is byte-stable.
 */
struct Catalog {
  std::vector<CatalogEntry> entries;

  const MetricModel& find(const std::string& id) const;
  bool contains(const std::string& id) const;
};

Catalog parse_catalog(const std::string& json_text);
Catalog load_catalog(const std::string& path);
std::string serialize_catalog(const Catalog& catalog);

/// Model node <-> JSON (canonical serialization, tolerant parsing).
MetricModel parse_model(const std::string& json_text);
std::string serialize_model(const MetricModel& model);

/// The models shipped with the tool; ranks 1 and 2, all combinators covered.
Catalog builtin_catalog();

}  // namespace jetcurv
