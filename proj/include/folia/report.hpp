#pragma once

// Check records and reports.  A record always carries both the measured
// value and the threshold it was held against, so a report is auditable
// without re-running anything.  Reports serialize deterministically;
// timestamps and wall time are omitted when byte-identical output matters.

#include <json.hpp>

#include <chrono>
#include <string>
#include <vector>

#include "folia/config.hpp"

namespace folia {

enum class CheckStatus { Pass, Fail, Undetermined };

inline const char* name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:         return "pass";
    case CheckStatus::Fail:         return "fail";
    case CheckStatus::Undetermined: return "undetermined";
  }
  return "?";
}

struct CheckRecord {
  std::string check;
  CheckStatus status = CheckStatus::Undetermined;
  double measured = 0;
  double threshold = 0;
  nlohmann::json witness;  // free-form payload: words, points, file names
};

// convenience: pass iff measured < threshold
inline CheckRecord bounded_check(std::string check_name, double measured,
                                 double threshold,
                                 nlohmann::json witness = nullptr) {
  CheckRecord r;
  r.check = std::move(check_name);
  r.measured = measured;
  r.threshold = threshold;
  r.status = measured < threshold ? CheckStatus::Pass : CheckStatus::Fail;
  r.witness = std::move(witness);
  return r;
}

struct Report {
  std::string command;
  nlohmann::json config;
  std::vector<CheckRecord> checks;
  std::vector<std::string> warnings;
  double wall_time_s = 0;
  std::string timestamp;        // empty when suppressed
  bool with_timestamp = true;

  void add(CheckRecord r) { checks.push_back(std::move(r)); }

  bool all_pass() const {
    for (const auto& c : checks) {
      if (c.status == CheckStatus::Fail) return false;
    }
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json jchecks = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json jc{{"check", c.check},
                        {"status", name(c.status)},
                        {"measured", c.measured},
                        {"threshold", c.threshold}};
      if (!c.witness.is_null()) jc["witness"] = c.witness;
      jchecks.push_back(std::move(jc));
    }
    nlohmann::json j{{"command", command},
                     {"config", config},
                     {"checks", std::move(jchecks)},
                     {"all_pass", all_pass()}};
    if (!warnings.empty()) j["warnings"] = warnings;
    if (with_timestamp) {
      j["timestamp"] = timestamp;
      j["wall_time_s"] = wall_time_s;
    }
    return j;
  }
};

inline std::string iso8601_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
  return buf;
}

}  // namespace folia
