#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

namespace simplexint {

/// Output document of one CLI invocation.
///
/// Serialized as JSON with sorted keys, so two runs with the same inputs
/// produce byte-identical text apart from diagnostics.wall_time_s. Doubles
/// are written in shortest round-trip form, which makes the text lossless.
struct RunReport {
  static constexpr int kFormatVersion = 1;

  int format_version = kFormatVersion;
  std::string command;   // the invocation, echoed
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json defaults = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::uint64_t evaluations = 0;
  double wall_time_s = 0.0;

  nlohmann::json to_json() const;
  /// Throws std::invalid_argument on a missing field or unknown version.
  static RunReport from_json(const nlohmann::json& doc);

  std::string serialize() const;
  static RunReport deserialize(std::string_view text);

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

}  // namespace simplexint
