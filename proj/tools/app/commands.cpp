#include "commands.hpp"

#include <algorithm>

#include "strata/chains.hpp"
#include "strata/errors.hpp"
#include "strata/lattice.hpp"

namespace strata::app {

json chain_json(const Chain& c) { return word_string(c); }

json type_json(const CombinatorialType& t) { return type_string(t); }

json dp_json(const DPClass& a) {
  return json::array({a.d, a.n[0], a.n[1], a.n[2], a.n[3]});
}

json certificate_json(const PCertificate& c) {
  auto clause = [](const ClauseResult& r) {
    return json{{"name", r.name},
                {"passed", r.passed},
                {"checked", r.checked},
                {"skipped", r.skipped},
                {"offending", r.offending}};
  };
  return json{{"passed", c.passed},
              {"universe_size", c.universe_size},
              {"members", c.members},
              {"kappa_bounded", c.kappa_bounded},
              {"clauses", json::array({clause(c.downward), clause(c.contains), clause(c.unobstructed)})}};
}

Report cmd_chains(int r, int v, int max_depth) {
  if (max_depth < 0) throw InputError("max-depth must be nonnegative");
  auto Q = build_blowup_poset(r, v);
  Report rep;
  rep.command = "chains";
  rep.args = {{"r", r}, {"dimv", v}, {"max_depth", max_depth}};
  rep.bounds = {{"max_depth", max_depth}, {"cover_budget", "total depth + r"}};
  auto chains = enumerate_chains(Q.lattice, max_depth);
  for (std::size_t i = 0; i < chains.size(); ++i) {
    const Chain& c = chains[i];
    const int budget = c.total_depth() + r;
    json covers = json::array();
    for (const auto& s : covers_above(c, budget)) covers.push_back(chain_json(s));
    json ess = json::array();
    for (const auto& e : essential_above(c, budget)) {
      json wit = json::array();
      for (const auto& s : e.witness) wit.push_back(chain_json(s));
      ess.push_back({{"join", chain_json(e.join)}, {"witness", wit}});
    }
    rep.rows.push_back({{"index", i},
                        {"word", chain_json(c)},
                        {"total_depth", c.total_depth()},
                        {"covers_above", covers},
                        {"essential_above", ess}});
  }
  return rep;
}

Report cmd_census(const CensusOptions& o) {
  auto Q = build_blowup_poset(o.r, o.v);
  Report rep;
  rep.command = "census";
  rep.args = {{"r", o.r},
              {"dimv", o.v},
              {"kappa_max", o.kappa_max},
              {"flavor", to_string(o.flavor)},
              {"with_mu", o.with_mu}};
  rep.bounds = {{"max_points", o.bounds.max_points},
                {"max_depth", o.bounds.max_depth},
                {"lowers", o.bounds.lowers == LowerRange::any ? "any" : "coatom_multiples"}};
  rep.notes.push_back("real_dim is 2*supp; mu_betti is indexed by mu-degree (pair degree + 1)");
  for_each_saturated_type(Q.lattice, o.bounds, o.flavor, true, [&](const CombinatorialType& t) {
    if (kappa_of(as_relative(t), o.v) > o.kappa_max) return;
    auto s = stratum_record(t, o.v, o.with_mu);
    json row{{"type", type_json(t)},
             {"gamma", s.gamma},
             {"rank", s.rank},
             {"supp", s.supp},
             {"kappa", s.kappa},
             {"real_dim", s.config_dim_real},
             {"essential", s.essential},
             {"mobius", s.mobius}};
    if (o.with_mu) row["mu_betti"] = s.mu_betti;
    rep.rows.push_back(std::move(row));
  });
  return rep;
}

namespace {

json range_json(const StabilityRange& s) {
  return json{{"feasible", s.feasible},
              {"reason", s.reason},
              {"M", s.M},
              {"I", s.I},
              {"slope", s.slope},
              {"intercept", s.intercept},
              {"conditions", s.conditions}};
}

}  // namespace

Report cmd_stability(const StabilityOptions& o) {
  o.ctx.validate();
  if (o.k_max < 1) throw InputError("k-max must be at least 1");
  Report rep;
  rep.command = "stability";
  rep.args = {{"d", o.ctx.degree},
              {"n", o.ctx.n},
              {"genus", o.ctx.genus},
              {"dimv", o.ctx.ambient_dim},
              {"general_position", o.ctx.general_position},
              {"pointed", o.ctx.pointed},
              {"k_max", o.k_max},
              {"certify", o.certify}};
  rep.bounds = {{"max_points", o.universe.max_points}, {"max_depth", o.universe.max_depth}};
  if (o.ctx.pointed) rep.notes.push_back("pointed offset: connectivity and I lowered by 1");
  const auto base = stability_range(o.ctx);
  for (int k = 1; k <= o.k_max; ++k) {
    CurveContext c = o.ctx;
    c.degree = checked::mul(c.degree, k);
    for (auto& x : c.n) x = checked::mul(x, k);
    auto s = stability_range(c);
    json row = range_json(s);
    row["k"] = k;
    row["clause"] = o.ctx.general_position ? "general_position" : "basic";
    row["connectivity"] = base.connectivity(k);
    rep.rows.push_back(std::move(row));
  }
  if (o.certify) {
    const auto& s = base;
    PFlavor f = o.ctx.pointed ? PFlavor::pointed
                              : (o.ctx.general_position ? PFlavor::general_position : PFlavor::plain);
    auto P = build_P(o.ctx, s.I, f, o.universe);
    auto cert = P.certify();
    json cex = nullptr;
    if (!cert.passed) cex = certificate_json(cert);
    auto ch = make_check("stability", "build_P_certificate_" + to_string(f), cert.universe_size, cex);
    if (cert.passed) ch.note = certificate_json(cert).dump();
    rep.checks.push_back(std::move(ch));
  }
  return rep;
}

Report cmd_delpezzo(const DPClass& a, const std::string& sub) {
  Report rep;
  rep.command = "delpezzo";
  rep.args = {{"alpha", dp_json(a)}, {"subcommand", sub}};
  rep.notes.push_back("ample means positive against all ten (-1)-curves");
  if (sub == "ample") {
    json degs = json::array();
    for (const auto& c : dp_minus_one_curves()) degs.push_back(dp_pairing(a, c));
    rep.rows.push_back({{"class", dp_json(a)}, {"ample", dp_is_ample(a)}, {"curve_degrees", degs}});
  } else if (sub == "normalize") {
    auto n = dp_normalize(a);
    std::string w;
    for (std::size_t i = 0; i < n.witness.size(); ++i)
      w += (i ? "." : "") + weyl_generator_name(n.witness[i]);
    rep.rows.push_back({{"class", dp_json(a)},
                        {"normalized", dp_json(n.cls)},
                        {"witness", w},
                        {"strict", n.strict}});
  } else if (sub == "nalpha") {
    auto r = n_alpha(a);
    json row{{"class", dp_json(a)}, {"feasible", r.feasible}};
    if (r.feasible) {
      row["N"] = r.N;
      row["argmax"] = weyl_group()[r.argmax].word_string();
      row["image"] = dp_json(r.image);
    } else {
      row["N"] = nullptr;
      row["reason"] = "no orbit element satisfies the general-position positivity conditions";
    }
    rep.rows.push_back(std::move(row));
  } else {
    throw InputError("unknown delpezzo subcommand '" + sub + "'");
  }
  return rep;
}

}  // namespace strata::app
