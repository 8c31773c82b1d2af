#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "app/commands.hpp"
#include "strata/errors.hpp"

namespace {

using namespace strata;
using namespace strata::app;

struct Output {
  std::string format = "json";
  std::string path;
};

int emit(const Report& rep, const Output& out) {
  const std::string text = out.format == "csv" ? rep.csv_text() : rep.json_text();
  std::string path = out.path;
  if (path.empty()) {
    if (const char* dir = std::getenv("STRATA_OUTPUT_DIR"); dir && *dir)
      path = (std::filesystem::path(dir) / (rep.command + "." + out.format)).string();
  }
  if (path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << text;
  }
  return rep.failed() ? 2 : 0;
}

std::vector<long long> parse_n(const std::string& s) {
  std::vector<long long> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find(',', pos);
    if (end == std::string::npos) end = s.size();
    std::string tok = s.substr(pos, end - pos);
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError("bad multiplicity list '" + s + "'");
    }
    pos = end + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strata: stratified configuration spaces, chain lattices and stability ranges"};
  app.require_subcommand(1);
  Output out;
  app.add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--output,-o", out.path, "Write the report to a file");

  int chains_r = 2, chains_v = 3, chains_depth = 2;
  auto* chains = app.add_subcommand("chains", "Chains of the blowup lattice with covers and essential joins");
  chains->add_option("--lines,-r", chains_r, "Number of lines")->capture_default_str();
  chains->add_option("--dim,-v", chains_v, "Ambient dimension")->capture_default_str();
  chains->add_option("--max-depth", chains_depth, "Total depth bound")->capture_default_str();

  CensusOptions census_o;
  std::string census_flavor = "absolute";
  auto* census = app.add_subcommand("census", "Saturated types with kappa and Moebius data");
  census->add_option("--lines,-r", census_o.r)->capture_default_str();
  census->add_option("--dim,-v", census_o.v)->capture_default_str();
  census->add_option("--max-points", census_o.bounds.max_points)->capture_default_str();
  census->add_option("--max-depth", census_o.bounds.max_depth)->capture_default_str();
  census->add_option("--kappa-max", census_o.kappa_max)->capture_default_str();
  census->add_option("--flavor", census_flavor)
      ->check(CLI::IsMember({"absolute", "relative", "pointed"}))
      ->capture_default_str();
  census->add_flag("--mu", census_o.with_mu, "Include mu stalk Betti numbers");

  StabilityOptions stab_o;
  std::string stab_n = "2,2,2";
  auto* stab = app.add_subcommand("stability", "Stability constants and optional build_P certificate");
  stab->add_option("--genus,-g", stab_o.ctx.genus)->capture_default_str();
  stab->add_option("--degree,-d", stab_o.ctx.degree)->required();
  stab->add_option("--mult,-n", stab_n, "Comma separated n_1,...,n_r")->capture_default_str();
  stab->add_option("--dim,-v", stab_o.ctx.ambient_dim)->capture_default_str();
  stab->add_flag("--pointed", stab_o.ctx.pointed);
  stab->add_flag("--general-position", stab_o.ctx.general_position);
  stab->add_option("--k-max", stab_o.k_max)->capture_default_str();
  stab->add_flag("--certify", stab_o.certify, "Build P and check the certificate clauses");
  stab->add_option("--max-points", stab_o.universe.max_points)->capture_default_str();
  stab->add_option("--max-depth", stab_o.universe.max_depth)->capture_default_str();

  std::string dp_sub, dp_alpha;
  auto* dp = app.add_subcommand("delpezzo", "Degree-5 del Pezzo classes");
  dp->add_option("action", dp_sub, "ample | normalize | nalpha")
      ->required()
      ->check(CLI::IsMember({"ample", "normalize", "nalpha"}));
  dp->add_option("--alpha", dp_alpha, "Class as d,n1,n2,n3,n4")->required();

  VerifyOptions ver_o;
  std::vector<std::string> ver_suites{"all"};
  auto* ver = app.add_subcommand("verify", "Run the property-check suites");
  ver->add_option("--suite", ver_suites, "Suite name or 'all' (repeatable)")->capture_default_str();
  ver->add_option("--jobs,-j", ver_o.jobs, "Worker threads (0 = hardware)")->capture_default_str();
  ver->add_option("--seed", ver_o.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*chains) return emit(cmd_chains(chains_r, chains_v, chains_depth), out);
    if (*census) {
      census_o.flavor = parse_flavor(census_flavor);
      return emit(cmd_census(census_o), out);
    }
    if (*stab) {
      stab_o.ctx.n = parse_n(stab_n);
      return emit(cmd_stability(stab_o), out);
    }
    if (*dp) return emit(cmd_delpezzo(parse_dp_class(dp_alpha), dp_sub), out);
    if (*ver) {
      for (const auto& s : ver_suites) {
        if (s == "all") {
          for (const auto& n : suite_names())
            if (std::find(ver_o.suites.begin(), ver_o.suites.end(), n) == ver_o.suites.end())
              ver_o.suites.push_back(n);
        } else if (std::find(ver_o.suites.begin(), ver_o.suites.end(), s) == ver_o.suites.end()) {
          ver_o.suites.push_back(s);
        }
      }
      if (ver_o.jobs == 0) ver_o.jobs = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
      return emit(cmd_verify(ver_o), out);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const OverflowError& e) {
    std::cerr << "overflow: " << e.what() << "\n";
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
