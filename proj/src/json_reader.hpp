#pragma once

// Strict JSON field readers shared by the file-format parsers.

#include <cstdint>
#include <limits>
#include <set>
#include <string>

#include "etopo/io.hpp"

namespace etopo::io::detail {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw Error(Errc::config, where + ": " + what);
}

// Strict object reader: every key must be consumed before finish().
class Reader {
 public:
  Reader(const json& value, std::string where) : value_(value), where_(std::move(where)) {
    if (!value_.is_object()) fail(where_, "expected an object");
  }

  bool has(const char* key) const { return value_.contains(key); }
  std::string path(const char* key) const { return where_ + "." + key; }

  const json& at(const char* key) {
    if (!value_.contains(key)) fail(path(key), "missing required field");
    seen_.insert(key);
    return value_.at(key);
  }

  const json* find(const char* key) {
    if (!value_.contains(key)) return nullptr;
    seen_.insert(key);
    return &value_.at(key);
  }

  void finish() const {
    for (const auto& [key, unused] : value_.items()) {
      if (seen_.count(key) == 0) fail(where_ + "." + key, "unknown field");
    }
  }

 private:
  const json& value_;
  std::string where_;
  std::set<std::string> seen_;
};

inline double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

inline double probability(const json& v, const std::string& where) {
  const double p = number(v, where);
  if (!(p >= 0.0 && p <= 1.0)) fail(where, "expected a value in [0, 1]");
  return p;
}

inline std::int64_t integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<std::int64_t>();
}

inline std::uint64_t unsigned_integer(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  const auto i = integer(v, where);
  if (i < 0) fail(where, "expected a nonnegative integer");
  return static_cast<std::uint64_t>(i);
}

inline std::uint32_t id32(const json& v, const std::string& where) {
  const auto i = unsigned_integer(v, where);
  if (i > std::numeric_limits<std::uint32_t>::max()) fail(where, "id out of range");
  return static_cast<std::uint32_t>(i);
}

inline std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

inline const json& array(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array");
  return v;
}

inline std::string item(const std::string& where, std::size_t i) {
  return where + "[" + std::to_string(i) + "]";
}

}  // namespace etopo::io::detail
