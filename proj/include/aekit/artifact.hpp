#pragma once

// Provenance header written at the top of every file aekit emits. Headers
// carry no timestamps so identical inputs reproduce identical bytes.

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace aekit {

using ojson = nlohmann::ordered_json;

inline constexpr std::string_view kToolName = "aekit";
inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kHeaderKey = "_header";

/// 64-bit FNV-1a.
constexpr std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : data) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Hash of a configuration object. Keys are sorted before hashing so the
/// value does not depend on insertion order.
inline std::string config_hash(const ojson& config) {
  const nlohmann::json sorted = nlohmann::json::parse(config.dump());
  return hex64(fnv1a64(sorted.dump()));
}

inline ojson make_header(std::string_view command, const ojson& config,
                         const std::vector<std::uint64_t>& seeds) {
  ojson h;
  h["tool"] = kToolName;
  h["version"] = kToolVersion;
  h["command"] = command;
  h["config_hash"] = config_hash(config);
  h["seeds"] = seeds;
  h["config"] = config;
  return h;
}

/// The header as the first line of a line-delimited file.
inline std::string header_line(const ojson& header) {
  ojson line;
  line[std::string(kHeaderKey)] = header;
  return line.dump();
}

template <typename Json>
bool is_header(const Json& line) {
  return line.is_object() && line.contains(std::string(kHeaderKey));
}

}  // namespace aekit
