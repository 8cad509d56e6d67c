#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "jetcurv/base.hpp"

namespace jetcurv {

/// Fixed 17-significant-digit, locale-independent formatting ('%.17g' shape).
std::string format_double(double value);

/**
 * Minimal streaming JSON writer with deterministic output: fixed key order is
 * the caller's responsibility, numbers go through format_double, no
 * whitespace.  Reports and canonical catalog serializations are built with
 * this so identical inputs produce byte-identical files.
 */
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view name);
  JsonWriter& value(std::string_view text);
  JsonWriter& value(const char* text) { return value(std::string_view(text)); }
  JsonWriter& value(double number);
  JsonWriter& value(int number);
  JsonWriter& value(long long number);
  JsonWriter& value(uint64_t number);
  JsonWriter& value(bool flag);
  JsonWriter& value(Complex z);  // [re, im]

  const std::string& str() const { return out_; }

 private:
  void separate();
  void escape_into(std::string_view text);

  std::string out_;
  std::string stack_;  // 'o' / 'a' nesting
  bool need_comma_ = false;
  bool after_key_ = false;
};

/// FNV-1a 64-bit hash, hex-encoded; used for config fingerprints.
uint64_t fnv1a64(std::string_view data);
std::string hex64(uint64_t value);

}  // namespace jetcurv
