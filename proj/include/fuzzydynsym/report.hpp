#pragma once

// Machine-readable run reports: versioned JSON schema, 12-significant-digit
// numeric rendering, and a stability hash over everything except the
// wall-clock fields so reruns on identical inputs are byte-comparable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "fuzzydynsym/fock_basis.hpp"

namespace fuzzydynsym::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Fixed 12-significant-digit rendering; all numbers in reports go through
/// this so byte stability is well defined.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // normalize the sign of zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct CheckRecord {
  std::string name;
  bool pass = false;
  std::string value;      // rendered residual / measured value
  std::string tolerance;  // rendered tolerance ("exact" for symbolic checks)
  std::string detail;     // optional free-form context
};

class Report {
 public:
  Report(std::string command, Json config)
      : command_(std::move(command)), config_(std::move(config)) {}

  void add_check(const std::string& name, bool pass, double value, double tolerance,
                 const std::string& detail = "") {
    checks_.push_back({name, pass, format_number(value), format_number(tolerance), detail});
    if (!pass) all_pass_ = false;
  }
  void add_exact_check(const std::string& name, bool pass, const std::string& detail = "") {
    checks_.push_back({name, pass, pass ? "0" : "nonzero", "exact", detail});
    if (!pass) all_pass_ = false;
  }
  void add_table(const std::string& name, Json table) { tables_[name] = std::move(table); }

  bool all_pass() const { return all_pass_; }
  const std::vector<CheckRecord>& checks() const { return checks_; }

  Json to_json(double wall_seconds) const {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command_;
    j["config"] = config_;
    Json checks = Json::array();
    for (const CheckRecord& c : checks_) {
      Json e;
      e["name"] = c.name;
      e["status"] = c.pass ? "pass" : "fail";
      e["value"] = c.value;
      e["tolerance"] = c.tolerance;
      if (!c.detail.empty()) e["detail"] = c.detail;
      checks.push_back(e);
    }
    j["checks"] = checks;
    if (!tables_.empty()) j["tables"] = tables_;
    j["status"] = all_pass_ ? "pass" : "fail";
    j["stability_hash"] = stability_hash(j);
    // everything below is excluded from the stability hash
    j["wall_seconds"] = format_number(wall_seconds);
    return j;
  }

  /// FNV-1a over the serialized report with volatile fields removed.
  static std::string stability_hash(Json j) {
    j.erase("wall_seconds");
    j.erase("stability_hash");
    uint64_t h = fock::fnv1a64(j.dump());
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

 private:
  std::string command_;
  Json config_;
  std::vector<CheckRecord> checks_;
  Json tables_ = Json::object();
  bool all_pass_ = true;
};

/// Human-readable description of the report layout, printed by `schema`.
inline std::string schema_text() {
  return R"SCHEMA({
  "schema_version": 1,
  "command": "string  -- subcommand that produced the report",
  "config": "object  -- exact resolved configuration (reproducibility)",
  "checks": [
    {
      "name": "string",
      "status": "pass | fail",
      "value": "string  -- number rendered with 12 significant digits",
      "tolerance": "string  -- number as above, or 'exact'",
      "detail": "string  -- optional"
    }
  ],
  "tables": "object  -- optional named result tables",
  "status": "pass | fail  -- aggregate over checks",
  "stability_hash": "string  -- FNV-1a64 of the report minus volatile fields",
  "wall_seconds": "string  -- excluded from the stability hash"
}
)SCHEMA";
}

/// Structural validation against the schema above.
inline bool validate_report(const Json& j, std::string* why = nullptr) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  for (const char* key : {"schema_version", "command", "config", "checks", "status",
                          "stability_hash", "wall_seconds"})
    if (!j.contains(key)) return fail(std::string("missing field '") + key + "'");
  if (!j["checks"].is_array()) return fail("'checks' must be an array");
  for (const auto& c : j["checks"]) {
    for (const char* key : {"name", "status", "value", "tolerance"})
      if (!c.contains(key)) return fail(std::string("check missing field '") + key + "'");
    std::string s = c["status"];
    if (s != "pass" && s != "fail") return fail("check status must be pass|fail");
  }
  Json copy = j;
  std::string expect = copy["stability_hash"];
  if (Report::stability_hash(copy) != expect) return fail("stability hash mismatch");
  return true;
}

}  // namespace fuzzydynsym::report
