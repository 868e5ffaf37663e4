#include "simplexint/report.hpp"

#include <stdexcept>

namespace simplexint {

nlohmann::json RunReport::to_json() const {
  return {
      {"format_version", format_version},
      {"command", command},
      {"inputs", inputs},
      {"defaults", defaults},
      {"results", results},
      {"diagnostics", {{"evaluations", evaluations}, {"wall_time_s", wall_time_s}}},
  };
}

RunReport RunReport::from_json(const nlohmann::json& doc) {
  try {
    RunReport r;
    r.format_version = doc.at("format_version").get<int>();
    if (r.format_version != kFormatVersion) {
      throw std::invalid_argument("unsupported report format_version " +
                                  std::to_string(r.format_version));
    }
    r.command = doc.at("command").get<std::string>();
    r.inputs = doc.at("inputs");
    r.defaults = doc.at("defaults");
    r.results = doc.at("results");
    const auto& diag = doc.at("diagnostics");
    r.evaluations = diag.at("evaluations").get<std::uint64_t>();
    r.wall_time_s = diag.at("wall_time_s").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

std::string RunReport::serialize() const { return to_json().dump(2) + "\n"; }

RunReport RunReport::deserialize(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("report is not valid JSON: ") + e.what());
  }
  return from_json(doc);
}

}  // namespace simplexint
