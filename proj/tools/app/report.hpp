#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace strata::app {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0.0";

/// info checks carry findings and never affect the exit status.
enum class CheckStatus { pass, fail, info };
std::string to_string(CheckStatus s);

struct Check {
  std::string suite;
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::uint64_t checked = 0;
  json counterexample;  ///< null unless failed (or an info finding)
  std::string note;
};

/// Builds a pass/fail check from a count and an optional first failure.
Check make_check(std::string suite, std::string name, std::uint64_t checked, json counterexample,
                 std::string note = {});

struct Report {
  std::string command;
  json args = json::object();
  json bounds = json::object();
  std::vector<json> rows;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool failed() const;
  json to_json() const;
  /// Canonical text: sorted keys, two-space indent, trailing newline.
  std::string json_text() const;
  /// One line per row; columns are the sorted union of row keys, nested
  /// values are written as compact JSON. Reports without rows list checks.
  std::string csv_text() const;
};

}  // namespace strata::app
