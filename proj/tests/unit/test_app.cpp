#include "app/commands.hpp"
#include "doctest.h"
#include "strata/errors.hpp"

using namespace strata;
using namespace strata::app;

TEST_CASE("report json shape") {
  Report r;
  r.command = "verify";
  r.checks.push_back(make_check("s", "ok", 3, nullptr));
  CHECK_FALSE(r.failed());
  r.checks.push_back(make_check("s", "bad", 1, json{{"x", 1}}));
  CHECK(r.failed());
  auto j = json::parse(r.json_text());
  CHECK(j["schemaVersion"] == kSchemaVersion);
  CHECK(j["passed"] == false);
  CHECK(j["checks"][1]["status"] == "fail");
  CHECK(r.json_text().back() == '\n');
}

TEST_CASE("csv escapes and columns") {
  Report r;
  r.command = "chains";
  r.rows.push_back({{"b", "x,y"}, {"a", 1}});
  r.rows.push_back({{"a", 2}, {"c", json::array({1, 2})}});
  auto csv = r.csv_text();
  CHECK(csv.rfind("a,b,c\n", 0) == 0);
  CHECK(csv.find("\"x,y\"") != std::string::npos);
  CHECK(csv.find("\"[1,2]\"") != std::string::npos);
}

TEST_CASE("commands produce rows") {
  auto c = cmd_chains(1, 3, 2);
  CHECK(c.rows.size() == 6);
  CHECK(c.rows[0]["word"] == "triv");
  auto d = cmd_delpezzo(DPClass{8, {4, 3, 2, 1}}, "nalpha");
  CHECK(d.rows.size() == 1);
  CHECK_THROWS_AS(cmd_delpezzo(DPClass{8, {4, 3, 2, 1}}, "other"), InputError);
  CHECK_THROWS_AS(cmd_chains(0, 3, 2), InputError);
}

TEST_CASE("verify merges suites in order and rejects unknown names") {
  VerifyOptions o;
  o.suites = {"stability", "catalogue"};
  o.jobs = 2;
  auto r = cmd_verify(o);
  REQUIRE_FALSE(r.checks.empty());
  CHECK(r.checks.front().suite == "stability");
  CHECK(r.checks.back().suite == "catalogue");
  CHECK_FALSE(r.failed());
  o.jobs = 1;
  CHECK(cmd_verify(o).json_text() == r.json_text());
  o.suites = {"nope"};
  CHECK_THROWS_AS(cmd_verify(o), InputError);
}

TEST_CASE("csv without rows lists checks") {
  Report r;
  r.command = "verify";
  r.checks.push_back(make_check("s", "ok", 3, nullptr));
  r.checks.push_back(make_check("s", "bad", 1, json{{"x", 1}}));
  auto csv = r.csv_text();
  CHECK(csv.rfind("checked,counterexample,name,note,status,suite\n", 0) == 0);
  CHECK(csv.find("3,,ok,,pass,s\n") != std::string::npos);
  CHECK(csv.find("1,\"{\"\"x\"\":1}\",bad,,fail,s\n") != std::string::npos);
}
