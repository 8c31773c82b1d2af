#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "report.hpp"
#include "strata/delpezzo.hpp"
#include "strata/stability.hpp"
#include "strata/types.hpp"

namespace strata::app {

Report cmd_chains(int r, int v, int max_depth);

struct CensusOptions {
  int r = 3;
  int v = 3;
  TypeBounds bounds{1, 3, LowerRange::any};
  long long kappa_max = 2;
  TypeFlavor flavor = TypeFlavor::absolute;
  bool with_mu = false;
};
Report cmd_census(const CensusOptions& o);

struct StabilityOptions {
  CurveContext ctx;
  int k_max = 3;
  bool certify = false;
  UniverseBounds universe;
};
Report cmd_stability(const StabilityOptions& o);

/// sub is one of ample, normalize, nalpha.
Report cmd_delpezzo(const DPClass& alpha, const std::string& sub);

struct VerifyOptions {
  std::vector<std::string> suites;  ///< expanded suite names
  int jobs = 1;
  std::uint64_t seed = 20240917;
};
/// Stable suite names in run order.
const std::vector<std::string>& suite_names();
/// Runs the suites (in parallel up to jobs) and merges checks in suite order.
Report cmd_verify(const VerifyOptions& o);
/// Checks of one suite. Throws InputError for an unknown name.
std::vector<Check> run_suite(const std::string& name, std::uint64_t seed);

// Shared row encoders.
json chain_json(const Chain& c);
json type_json(const CombinatorialType& t);
json dp_json(const DPClass& a);
json certificate_json(const PCertificate& c);

}  // namespace strata::app
