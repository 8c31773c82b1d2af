#include "report.hpp"

#include <set>
#include <sstream>

namespace strata::app {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::info: return "info";
  }
  return "?";
}

Check make_check(std::string suite, std::string name, std::uint64_t checked, json counterexample,
                 std::string note) {
  Check c;
  c.suite = std::move(suite);
  c.name = std::move(name);
  c.checked = checked;
  c.status = counterexample.is_null() ? CheckStatus::pass : CheckStatus::fail;
  c.counterexample = std::move(counterexample);
  c.note = std::move(note);
  return c;
}

bool Report::failed() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::fail) return true;
  return false;
}

json Report::to_json() const {
  json j;
  j["schemaVersion"] = kSchemaVersion;
  j["command"] = {{"name", command}, {"args", args}};
  j["bounds"] = bounds;
  j["rows"] = json::array();
  for (const auto& r : rows) j["rows"].push_back(r);
  j["checks"] = json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"suite", c.suite},
                           {"name", c.name},
                           {"status", to_string(c.status)},
                           {"checked", c.checked},
                           {"counterexample", c.counterexample},
                           {"note", c.note}});
  }
  j["notes"] = notes;
  j["passed"] = !failed();
  return j;
}

std::string Report::json_text() const { return to_json().dump(2) + "\n"; }

namespace {

std::string csv_cell(const json& v) {
  std::string s;
  if (v.is_null()) return "";
  if (v.is_string()) s = v.get<std::string>();
  else s = v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string csv_table(const std::vector<json>& rows) {
  std::set<std::string> keys;
  for (const auto& r : rows)
    for (auto it = r.begin(); it != r.end(); ++it) keys.insert(it.key());
  std::ostringstream os;
  bool first = true;
  for (const auto& k : keys) {
    os << (first ? "" : ",") << k;
    first = false;
  }
  os << '\n';
  for (const auto& r : rows) {
    first = true;
    for (const auto& k : keys) {
      os << (first ? "" : ",") << (r.contains(k) ? csv_cell(r[k]) : "");
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace

std::string Report::csv_text() const {
  if (!rows.empty()) return csv_table(rows);
  const json doc = to_json();
  std::vector<json> cs(doc["checks"].begin(), doc["checks"].end());
  return csv_table(cs);
}

}  // namespace strata::app
