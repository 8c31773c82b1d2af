#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <set>
#include <thread>
#include <unordered_map>

#include "commands.hpp"
#include "strata/chains.hpp"
#include "strata/divisors.hpp"
#include "strata/errors.hpp"
#include "strata/homalg.hpp"
#include "strata/lattice.hpp"

namespace strata::app {

namespace {

// Order-compatible depth functions with values <= max_value (top fixed at 0).
std::vector<DepthFunction> all_depth_functions(const LatticePtr& L, int max_value) {
  const auto& proper = L->proper_elements();
  std::vector<DepthFunction> out;
  std::vector<int> d(L->size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == proper.size()) {
      for (ElementId p : proper)
        for (ElementId q : proper)
          if (L->leq(p, q) && d[p] > d[q]) return;
      out.push_back(unchecked_depths(L, d));
      return;
    }
    for (int v = 0; v <= max_value; ++v) {
      d[proper[k]] = v;
      rec(k + 1);
    }
    d[proper[k]] = 0;
  };
  rec(0);
  return out;
}

json depths_json(const DepthFunction& g) { return g.depths(); }

std::string chain_word(const ChainCatalog& cat, std::size_t i) { return word_string(cat.at(i)); }

// -------------------------------------------------------------------- lattice

std::vector<Check> suite_lattice() {
  std::vector<Check> out;
  std::vector<std::pair<std::string, MeetSemilattice>> lattices;
  for (int r = 1; r <= 4; ++r) lattices.emplace_back("Q_" + std::to_string(r), *build_blowup_poset(r, 3).lattice);
  for (int n = 1; n <= 4; ++n)
    lattices.emplace_back("B_" + std::to_string(n), MeetSemilattice::from_order(boolean_lattice(n)));

  json cex = nullptr;
  for (const auto& [name, L] : lattices) {
    std::vector<ElementId> table(L.size() * L.size());
    for (ElementId a = 0; a < L.size(); ++a)
      for (ElementId b = 0; b < L.size(); ++b) table[a * L.size() + b] = L.meet(a, b);
    auto err = check_meet_table(L.size(), table, L.top());
    if (err && cex.is_null()) cex = {{"lattice", name}, {"error", *err}};
  }
  out.push_back(make_check("lattice", "meet_table_axioms", lattices.size(), cex));

  std::vector<std::pair<std::string, Poset>> posets;
  for (const auto& [name, L] : lattices) posets.emplace_back(name, L.order());
  for (int r = 1; r <= 3; ++r) {
    ChainCatalog cat(build_blowup_poset(r, 3).lattice, 3);
    if (cat.size() > 64) continue;
    posets.emplace_back("Ch(Q_" + std::to_string(r) + ")_3",
                        Poset(cat.size(), [&](ElementId a, ElementId b) { return cat.leq(a, b); }));
  }
  cex = nullptr;
  std::uint64_t n = 0;
  for (const auto& [name, P] : posets) {
    for (ElementId lo = 0; lo < P.size(); ++lo)
      for (ElementId hi = 0; hi < P.size(); ++hi) {
        if (!P.leq(lo, hi)) continue;
        ++n;
        long long s = 0;
        for (ElementId z : interval_elements(P, lo, hi, false, false)) s += mobius(P, lo, z);
        if (s != (lo == hi ? 1 : 0) && cex.is_null())
          cex = {{"poset", name}, {"lo", P.label(lo)}, {"hi", P.label(hi)}, {"sum", s}};
      }
  }
  out.push_back(make_check("lattice", "mobius_interval_sums", n, cex));

  cex = nullptr;
  n = 0;
  for (int r = 1; r <= 4; ++r) {
    auto Q = build_blowup_poset(r, 3);
    const Poset& P = Q.lattice->order();
    // every maximal chain from 0 to V: walk covers
    std::function<void(ElementId, int)> walk = [&](ElementId a, int len) {
      if (a == Q.whole()) {
        ++n;
        if (len != 2 && cex.is_null()) cex = {{"r", r}, {"length", len}};
        return;
      }
      for (ElementId b = 0; b < P.size(); ++b) {
        if (!P.lt(a, b)) continue;
        bool cover = true;
        for (ElementId c = 0; c < P.size() && cover; ++c) cover = !(P.lt(a, c) && P.lt(c, b));
        if (cover) walk(b, len + 1);
      }
    };
    walk(Q.zero(), 0);
  }
  out.push_back(make_check("lattice", "blowup_graded", n, cex));
  return out;
}

// ------------------------------------------------------------------ catalogue

std::vector<Check> suite_catalogue() {
  json cex = nullptr;
  std::uint64_t n = 0;
  for (int r = 1; r <= 3; ++r) {
    auto L = build_blowup_poset(r, 3).lattice;
    for (int i = 1; i <= r; ++i) {
      const std::string li = "l" + std::to_string(i);
      for (int d = 0; d <= 3; ++d) {
        Chain w = d == 0 ? Chain::trivial(L) : parse_word(L, std::to_string(d) + "*" + li);
        std::set<std::string> expected;
        if (d == 0) {
          for (int j = 1; j <= r; ++j) expected.insert("1*l" + std::to_string(j));
          if (r >= 2) expected.insert("1*0");
        } else {
          expected.insert(std::to_string(d + 1) + "*" + li);
          expected.insert(d == 1 ? "1*0" : std::to_string(d - 1) + "*" + li + "+1*0");
          expected.insert(std::to_string(d) + "*" + li + "+1*0");
        }
        std::set<std::string> got;
        for (const auto& e : essential_above(w, w.total_depth() + r)) got.insert(word_string(e.join));
        ++n;
        if (got != expected && cex.is_null())
          cex = {{"r", r}, {"lower", word_string(w)}, {"expected", expected}, {"got", got}};
      }
    }
  }
  return {make_check("catalogue", "essential_catalogue", n, cex)};
}

// -------------------------------------------------------------------- closure

std::vector<Check> suite_closure() {
  std::vector<Check> out;
  json ext = nullptr, idem = nullptr, mono = nullptr, adj = nullptr, lub = nullptr, trip = nullptr,
       cross = nullptr;
  std::uint64_t n1 = 0, n2 = 0, n3 = 0, n4 = 0, n5 = 0, n6 = 0;
  for (int r = 1; r <= 3; ++r) {
    auto L = build_blowup_poset(r, 3).lattice;
    auto gs = all_depth_functions(L, 3);
    std::vector<Chain> sat;
    std::vector<std::size_t> saturated;
    for (std::size_t i = 0; i < gs.size(); ++i) {
      sat.push_back(saturate(gs[i]));
      if (gs[i].is_meet_preserving()) saturated.push_back(i);
    }
    for (std::size_t i = 0; i < gs.size(); ++i) {
      ++n1;
      if (!pointwise_leq(gs[i], sat[i].depth()) && ext.is_null())
        ext = {{"r", r}, {"g", depths_json(gs[i])}};
      if (!(saturate(sat[i].depth()) == sat[i]) && idem.is_null())
        idem = {{"r", r}, {"g", depths_json(gs[i])}};
      for (std::size_t j = 0; j < gs.size(); ++j) {
        if (!pointwise_leq(gs[i], gs[j])) continue;
        ++n2;
        if (!pointwise_leq(sat[i].depth(), sat[j].depth()) && mono.is_null())
          mono = {{"r", r}, {"g", depths_json(gs[i])}, {"h", depths_json(gs[j])}};
      }
      for (std::size_t h : saturated) {
        ++n3;
        bool lhs = pointwise_leq(gs[i], gs[h]);
        bool rhs = pointwise_leq(sat[i].depth(), gs[h]);
        if (lhs != rhs && adj.is_null())
          adj = {{"r", r}, {"g", depths_json(gs[i])}, {"h", depths_json(gs[h])}};
      }
    }
    for (std::size_t a : saturated) {
      const Chain& ca = sat[a];
      ++n5;
      if (!(chain_from_word(L, chain_to_word(ca.depth())) == ca) && trip.is_null())
        trip = {{"r", r}, {"chain", word_string(ca)}};
      for (std::size_t b : saturated) {
        Chain j = chain_join(ca, sat[b]);
        ++n4;
        bool upper = chain_leq(ca, j) && chain_leq(sat[b], j);
        bool least = true;
        for (std::size_t c : saturated)
          if (chain_leq(ca, sat[c]) && chain_leq(sat[b], sat[c]) && !chain_leq(j, sat[c])) least = false;
        if ((!upper || !least) && lub.is_null())
          lub = {{"r", r}, {"a", word_string(ca)}, {"b", word_string(sat[b])}, {"join", word_string(j)}};
      }
    }
    ChainCatalog cat(L, 3);
    for (std::size_t w = 0; w < cat.size(); ++w)
      for (std::size_t x = 0; x < cat.size(); ++x) {
        if (!cat.leq(w, x)) continue;
        ++n6;
        std::vector<std::size_t> es;
        for (std::size_t e = 0; e < cat.size(); ++e)
          if (cat.leq(e, x) && cat.is_essential_pair(w, e)) es.push_back(e);
        std::size_t top = cat.cover_join_below(w, x);
        bool ok = std::find(es.begin(), es.end(), top) != es.end();
        for (std::size_t e : es) ok = ok && cat.leq(e, top);
        if (!ok && cross.is_null())
          cross = {{"r", r}, {"w", chain_word(cat, w)}, {"x", chain_word(cat, x)}};
      }
  }
  out.push_back(make_check("closure", "saturate_extensive", n1, ext));
  out.push_back(make_check("closure", "saturate_idempotent", n1, idem));
  out.push_back(make_check("closure", "saturate_monotone", n2, mono));
  out.push_back(make_check("closure", "saturate_adjunction", n3, adj));
  out.push_back(make_check("closure", "chain_join_least_upper_bound", n4, lub));
  out.push_back(make_check("closure", "word_round_trip", n5, trip));
  out.push_back(make_check("closure", "crosscut_unique_maximum", n6, cross));
  return out;
}

// ------------------------------------------------------------------- divisors

// Multisets (as sorted index vectors) of nontrivial catalog chains.
void for_each_multiset(std::size_t n, int max_size, std::size_t first,
                       const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!cur.empty()) visit(cur);
    if (static_cast<int>(cur.size()) == max_size) return;
    for (std::size_t i = from; i < n; ++i) {
      cur.push_back(i);
      rec(i);
      cur.pop_back();
    }
  };
  rec(first);
}

LabeledConfiguration config_of(const ChainCatalog& cat, const std::vector<std::size_t>& idx) {
  LabeledConfiguration x(cat.lattice_ptr());
  for (std::size_t k = 0; k < idx.size(); ++k) x.set("p" + std::to_string(k), cat.at(idx[k]).depth());
  return x;
}

// Longest cover path from the trivial chain to every catalog element.
std::vector<long long> longest_from_trivial(const ChainCatalog& cat) {
  std::vector<long long> best(cat.size(), -1);
  best[0] = 0;
  for (std::size_t a = 0; a < cat.size(); ++a) {  // canonical order extends the chain order
    if (best[a] < 0) continue;
    for (std::size_t b : cat.covers_above(a)) best[b] = std::max(best[b], best[a] + 1);
  }
  return best;
}

std::string config_string(const ChainCatalog& cat, const std::vector<std::size_t>& idx) {
  std::string s = "{";
  for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? "; " : "") + chain_word(cat, idx[k]);
  return s + "}";
}

std::vector<Check> suite_divisors() {
  std::vector<Check> out;
  json add = nullptr, rank = nullptr;
  std::uint64_t n1 = 0, n2 = 0;
  for (int r = 1; r <= 3; ++r) {
    auto Q = build_blowup_poset(r, 3);
    ChainCatalog cat(Q.lattice, 3);
    const std::vector<std::vector<long long>> hs{Q.gamma, Q.rank};
    for (std::size_t a = 1; a < cat.size(); ++a)
      for (std::size_t b = 1; b < cat.size(); ++b) {
        LabeledConfiguration x(Q.lattice), y(Q.lattice), u(Q.lattice);
        x.set("a", cat.at(a).depth());
        y.set("b", cat.at(b).depth());
        u.set("a", cat.at(a).depth()).set("b", cat.at(b).depth());
        for (const auto& h : hs) {
          ++n1;
          if (extend_function(h, u) != extend_function(h, x) + extend_function(h, y) && add.is_null())
            add = {{"r", r}, {"a", chain_word(cat, a)}, {"b", chain_word(cat, b)}};
        }
      }
    auto longest = longest_from_trivial(cat);
    for_each_multiset(cat.size(), 3, 1, [&](const std::vector<std::size_t>& idx) {
      ++n2;
      long long expect = 0;
      for (auto i : idx) expect += longest[i];
      long long got = rank_of(config_of(cat, idx));
      if (got != expect && rank.is_null())
        rank = {{"r", r}, {"x", config_string(cat, idx)}, {"rank_of", got}, {"longest_chain", expect}};
    });
  }
  out.push_back(make_check("divisors", "extend_function_additive", n1, add));
  out.push_back(make_check("divisors", "rank_is_longest_chain", n2, rank));
  return out;
}

// --------------------------------------------------------- mu stalk suites

// Calls visit(cat, w, x) for single- and two-point supports with total upper
// depth <= 4 on Q_r, r <= 3.
void for_each_stalk_pair(
    const std::function<void(int, const ChainCatalog&, const std::vector<std::size_t>&,
                             const std::vector<std::size_t>&)>& visit) {
  for (int r = 1; r <= 3; ++r) {
    ChainCatalog cat(build_blowup_poset(r, 3).lattice, 4);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t w = 0; w < cat.size(); ++w)
      for (std::size_t x = 0; x < cat.size(); ++x)
        if (cat.leq(w, x)) pairs.emplace_back(w, x);
    auto depth = [&](std::size_t i) { return cat.at(i).total_depth(); };
    for (const auto& [w, x] : pairs)
      if (w != x) visit(r, cat, {w}, {x});
    for (std::size_t p = 0; p < pairs.size(); ++p)
      for (std::size_t q = p; q < pairs.size(); ++q) {
        const auto& [w1, x1] = pairs[p];
        const auto& [w2, x2] = pairs[q];
        if (x1 == 0 || x2 == 0) continue;  // both points in the support
        if (w1 == x1 && w2 == x2) continue;
        if (depth(x1) + depth(x2) > 4) continue;
        visit(r, cat, {w1, w2}, {x1, x2});
      }
  }
}

json pair_json(const ChainCatalog& cat, int r, const std::vector<std::size_t>& w,
               const std::vector<std::size_t>& x) {
  json ws = json::array(), xs = json::array();
  for (auto i : w) ws.push_back(chain_word(cat, i));
  for (auto i : x) xs.push_back(chain_word(cat, i));
  return {{"r", r}, {"w", ws}, {"x", xs}};
}

std::vector<Check> suite_mu_vanishing() {
  json zero = nullptr, single = nullptr;
  std::uint64_t n1 = 0, n2 = 0;
  for_each_stalk_pair([&](int r, const ChainCatalog& cat, const std::vector<std::size_t>& w,
                          const std::vector<std::size_t>& x) {
    bool essential = true;
    for (std::size_t k = 0; k < w.size(); ++k) essential = essential && cat.is_essential_pair(w[k], x[k]);
    auto s = mu_stalk(cat, w, x);
    if (!essential) {
      ++n1;
      if (!s.is_zero() && zero.is_null()) {
        zero = pair_json(cat, r, w, x);
        zero["betti"] = s.betti;
      }
    } else {
      ++n2;
      int degrees = 0;
      for (long long b : s.betti) degrees += b != 0;
      if ((degrees != 1 || !s.is_free) && single.is_null()) {
        single = pair_json(cat, r, w, x);
        single["betti"] = s.betti;
      }
    }
  });
  return {make_check("mu-vanishing", "non_essential_stalk_zero", n1, zero),
          make_check("mu-vanishing", "essential_stalk_single_degree", n2, single)};
}

std::vector<Check> suite_mobius_euler() {
  json eq = nullptr, les = nullptr, free = nullptr;
  std::uint64_t n = 0;
  for_each_stalk_pair([&](int r, const ChainCatalog& cat, const std::vector<std::size_t>& w,
                          const std::vector<std::size_t>& x) {
    ++n;
    auto em = euler_vs_mobius(cat, w, x);
    if (!em.equal && eq.is_null()) {
      eq = pair_json(cat, r, w, x);
      eq["euler"] = em.euler;
      eq["mobius"] = em.mobius;
    }
    auto s = mu_stalk(cat, w, x);
    if (!s.is_free && free.is_null()) free = pair_json(cat, r, w, x);

    Poset P = product_interval(cat, w, x);
    const ElementId top = static_cast<ElementId>(P.size() - 1);
    std::vector<ElementId> half;
    for (ElementId z = 1; z < P.size(); ++z) half.push_back(z);
    auto K = order_complex(P, half);
    SimplicialComplex Lc;
    std::uint32_t top_vertex = 0;
    for (std::uint32_t k = 0; k < K.vertices.size(); ++k)
      if (K.vertices[k] == top) top_vertex = k;
    for (int d = 0; d <= K.complex.dim(); ++d)
      for (const auto& sx : K.complex.simplices(d))
        if (std::find(sx.begin(), sx.end(), top_vertex) == sx.end()) Lc.add(sx);
    long long lhs = homology(K.complex).euler() - homology(Lc).euler();
    long long rhs = relative_homology(K.complex, Lc).euler();
    if (lhs != rhs && les.is_null()) {
      les = pair_json(cat, r, w, x);
      les["chi_K_minus_chi_L"] = lhs;
      les["chi_pair"] = rhs;
    }
  });
  return {make_check("mobius-euler", "euler_equals_mobius", n, eq),
          make_check("mobius-euler", "long_exact_sequence_euler", n, les),
          make_check("mobius-euler", "stalks_free", n, free)};
}

// ----------------------------------------------------------- superadditivity

long long letters_of(const Chain& c, ElementId q) {
  long long m = 0;
  for (const auto& l : c.word())
    if (l.element == q) m += l.count;
  return m;
}

std::vector<Check> suite_superadditivity() {
  json sub = nullptr, literal = nullptr;
  std::uint64_t n = 0;
  for (int r = 1; r <= 3; ++r) {
    auto Q = build_blowup_poset(r, 3);
    ChainCatalog cat(Q.lattice, 3);
    auto E5 = [&](const Chain& c, int j5) {  // 5 * E with J = j5 / 5
      long long ml = 0;
      for (int i = 1; i <= r; ++i) ml += letters_of(c, Q.line(i));
      return 5 * letters_of(c, Q.zero()) + j5 * ml;
    };
    for (int j5 : {3, 4, 5})
      for (std::size_t a = 0; a < cat.size(); ++a)
        for (std::size_t b = 0; b < cat.size(); ++b) {
          ++n;
          Chain s = saturate(pointwise_sum(cat.at(a).depth(), cat.at(b).depth()));
          long long lhs = E5(s, j5), rhs = E5(cat.at(a), j5) + E5(cat.at(b), j5);
          json ce = {{"r", r},
                     {"J", std::to_string(j5) + "/5"},
                     {"g1", chain_word(cat, a)},
                     {"g2", chain_word(cat, b)},
                     {"sat_sum", word_string(s)},
                     {"E_sat_sum_times5", lhs},
                     {"E_sum_times5", rhs}};
          if (lhs > rhs && sub.is_null()) sub = ce;
          if (lhs < rhs && literal.is_null()) literal = ce;
        }
  }
  std::vector<Check> out;
  out.push_back(make_check("superadditivity", "E_sat_sum_at_most_sum", n, sub,
                           "reduces to (2J-1)(a1-a2) >= 0"));
  Check info = make_check("superadditivity", "E_sat_sum_at_least_sum_literal", n, literal,
                          "reverse inequality; recorded as a finding, not a failure");
  info.status = CheckStatus::info;
  out.push_back(std::move(info));
  return out;
}

// ----------------------------------------------------------------- rank-kappa

std::vector<Check> suite_rank_kappa() {
  json bound = nullptr, growth = nullptr, additive = nullptr;
  std::uint64_t n1 = 0, n2 = 0, n3 = 0;
  const int v = 3;
  for (int r = 1; r <= 3; ++r) {
    auto Q = build_blowup_poset(r, v);
    ChainCatalog cat(Q.lattice, 3);
    for_each_multiset(cat.size(), 3, 1, [&](const std::vector<std::size_t>& idx) {
      ++n1;
      auto x = config_of(cat, idx);
      long long rk = rank_of(x);
      long long kap = gamma_of(x, v) - rk - supp_of(x);
      if (rk > kap && bound.is_null())
        bound = {{"r", r}, {"x", config_string(cat, idx)}, {"rank", rk}, {"kappa", kap}};
    });
    ChainCatalog big(Q.lattice, 4);
    auto kappa1 = [&](std::size_t i) {
      LabeledConfiguration x(Q.lattice);
      if (i != 0) x.set("p", big.at(i).depth());
      return gamma_of(x, v) - rank_of(x) - supp_of(x);
    };
    for (std::size_t a = 0; a < big.size(); ++a) {
      if (big.at(a).total_depth() > 3) continue;
      for (std::size_t b : big.covers_above(a)) {
        ++n2;
        if (kappa1(b) < kappa1(a) + 1 && growth.is_null())
          growth = {{"r", r}, {"x1", chain_word(big, a)}, {"x2", chain_word(big, b)},
                    {"kappa1", kappa1(a)}, {"kappa2", kappa1(b)}};
      }
    }
    std::vector<TypeEntry> entries;
    for (std::size_t w = 0; w < cat.size(); ++w)
      for (std::size_t x = 0; x < cat.size(); ++x)
        if (cat.lt(w, x) && cat.at(x).total_depth() <= 2) entries.push_back({cat.at(w).depth(), cat.at(x).depth()});
    for (const auto& e1 : entries)
      for (const auto& e2 : entries) {
        ++n3;
        auto t1 = CombinatorialType::relative(Q.lattice, {e1});
        auto t2 = CombinatorialType::relative(Q.lattice, {e2});
        auto t12 = CombinatorialType::relative(Q.lattice, {e1, e2});
        if (kappa_of(t12, v) != kappa_of(t1, v) + kappa_of(t2, v) && additive.is_null())
          additive = {{"r", r}, {"T1", type_string(t1)}, {"T2", type_string(t2)}};
      }
  }
  return {make_check("rank-kappa", "rank_at_most_kappa", n1, bound),
          make_check("rank-kappa", "successor_kappa_growth", n2, growth),
          make_check("rank-kappa", "kappa_additive", n3, additive)};
}

// --------------------------------------------------------------- antisymmetry

std::vector<Check> suite_antisymmetry() {
  json anti = nullptr, refl = nullptr, trans = nullptr, size = nullptr;
  std::uint64_t n1 = 0, n2 = 0, n3 = 0;
  for (int r = 1; r <= 3; ++r) {
    auto L = build_blowup_poset(r, 3).lattice;
    for (TypeFlavor f : {TypeFlavor::absolute, TypeFlavor::relative}) {
      auto U = enumerate_saturated_types(L, TypeBounds{2, 2, LowerRange::any}, f, false);
      SaturatedOrder order(U);
      ++n1;
      if (auto v = order.antisymmetry_violation(); v && anti.is_null())
        anti = {{"r", r},
                {"flavor", to_string(f)},
                {"S", type_string(U[v->first])},
                {"T", type_string(U[v->second])}};
      if (f != TypeFlavor::absolute) continue;
      const std::size_t N = U.size();
      std::vector<std::vector<char>> rel(N, std::vector<char>(N, 0));
      for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) {
          rel[a][b] = leq_plus(U[a], U[b]);
          ++n2;
          if (rel[a][b] && U[a].size() > U[b].size() && size.is_null())
            size = {{"r", r}, {"S", type_string(U[a])}, {"T", type_string(U[b])}};
        }
      for (std::size_t a = 0; a < N; ++a) {
        if (!rel[a][a] && refl.is_null()) refl = {{"r", r}, {"T", type_string(U[a])}};
        for (std::size_t b = 0; b < N; ++b) {
          if (!rel[a][b]) continue;
          for (std::size_t c = 0; c < N; ++c) {
            ++n3;
            if (rel[b][c] && !rel[a][c] && trans.is_null())
              trans = {{"r", r}, {"S", type_string(U[a])}, {"T", type_string(U[b])}, {"U", type_string(U[c])}};
          }
        }
      }
    }
  }
  return {make_check("antisymmetry", "sat_order_antisymmetric", n1, anti),
          make_check("antisymmetry", "leq_plus_reflexive", n2, refl),
          make_check("antisymmetry", "leq_plus_transitive", n3, trans),
          make_check("antisymmetry", "leq_plus_size_monotone", n2, size)};
}

// ------------------------------------------------------------------- delpezzo

std::vector<Check> suite_delpezzo(std::uint64_t seed) {
  std::vector<Check> out;
  const auto& G = weyl_group();
  out.push_back(make_check("delpezzo", "weyl_group_order_120", 1,
                           G.size() == 120 ? json(nullptr) : json{{"order", G.size()}}));

  auto sample = random_ample_classes(seed, 1000);
  auto partners = random_ample_classes(seed + 1, 1000);
  json pres = nullptr, acan = nullptr, invol = nullptr, norm = nullptr, strict = nullptr, orbit = nullptr;
  std::uint64_t n1 = 0, n2 = 0;
  for (const auto& g : G) {
    if (!(g.apply(dp_anticanonical()) == dp_anticanonical()) && acan.is_null())
      acan = {{"element", g.word_string()}};
    for (std::size_t i = 0; i < 50; ++i) {
      ++n1;
      if (dp_pairing(g.apply(sample[i]), g.apply(partners[i])) != dp_pairing(sample[i], partners[i]) &&
          pres.is_null())
        pres = {{"element", g.word_string()}, {"a", dp_json(sample[i])}, {"b", dp_json(partners[i])}};
    }
  }
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto& a = sample[i];
    for (int g = 0; g < kWeylGenerators; ++g) {
      ++n1;
      if (dp_pairing(apply_generator(a, g), apply_generator(partners[i], g)) != dp_pairing(a, partners[i]) &&
          pres.is_null())
        pres = {{"generator", weyl_generator_name(g)}, {"a", dp_json(a)}, {"b", dp_json(partners[i])}};
    }
    for (std::array<int, 3> t : {std::array<int, 3>{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}) {
      ++n2;
      if (!(cremona(cremona(a, t), t) == a) && invol.is_null())
        invol = {{"a", dp_json(a)}, {"triple", t}};
      if (!(cremona(dp_anticanonical(), t) == dp_anticanonical()) && acan.is_null())
        acan = {{"triple", t}};
    }
    auto nm = dp_normalize(a);
    const auto& u = nm.cls;
    bool distinct = a.n[0] != a.n[1] && a.n[0] != a.n[2] && a.n[0] != a.n[3] && a.n[1] != a.n[2] &&
                    a.n[1] != a.n[3] && a.n[2] != a.n[3];
    for (auto [p, q] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
      long long lhs = u.n[static_cast<std::size_t>(p)] + u.n[static_cast<std::size_t>(q)] + u.n[3];
      if (lhs > u.d && norm.is_null()) norm = {{"a", dp_json(a)}, {"normalized", dp_json(u)}};
      if (distinct && lhs >= u.d && strict.is_null()) strict = {{"a", dp_json(a)}, {"normalized", dp_json(u)}};
    }
  }
  for (std::size_t i = 0; i < 20; ++i) {
    long long N = n_alpha(sample[i]).N;
    for (const auto& g : G)
      if (n_alpha(g.apply(sample[i])).N != N && orbit.is_null())
        orbit = {{"a", dp_json(sample[i])}, {"element", g.word_string()}};
  }
  json examples = nullptr;
  if (!dp_is_ample(dp_anticanonical()) || dp_is_ample(DPClass{1, {1, 1, 0, 0}}) ||
      n_alpha(dp_anticanonical()).feasible)
    examples = {{"detail", "ampleness or anticanonical n_alpha example mismatch"}};
  out.push_back(make_check("delpezzo", "weyl_preserves_pairing", n1, pres));
  out.push_back(make_check("delpezzo", "weyl_fixes_anticanonical", G.size() + 4 * sample.size(), acan));
  out.push_back(make_check("delpezzo", "cremona_involution", n2, invol));
  out.push_back(make_check("delpezzo", "normalize_inequalities", sample.size(), norm));
  out.push_back(make_check("delpezzo", "normalize_strict_when_distinct", sample.size(), strict));
  out.push_back(make_check("delpezzo", "n_alpha_orbit_constant", 20 * G.size(), orbit));
  out.push_back(make_check("delpezzo", "ampleness_examples", 3, examples));
  auto na = n_alpha(DPClass{8, {4, 3, 2, 1}});
  Check info = make_check("delpezzo", "n_alpha_sample_8_4_3_2_1", G.size(),
                          json{{"N", na.N}, {"argmax", G[na.argmax].word_string()}, {"image", dp_json(na.image)}});
  info.status = CheckStatus::info;
  out.push_back(std::move(info));
  return out;
}

// ------------------------------------------------------------------ stability

std::vector<Check> suite_stability() {
  json consts = nullptr, conn = nullptr, pointed = nullptr, mono = nullptr, tests = nullptr;
  std::uint64_t n2 = 0, n4 = 0;
  CurveContext c;
  c.degree = 5;
  c.n = {2, 2, 2};
  c.general_position = true;
  auto gp = stability_range(c);
  c.general_position = false;
  auto basic = stability_range(c);
  if (!(gp.feasible && gp.M == 1 && gp.I == 1 && !basic.feasible && basic.M == -1))
    consts = {{"gp_M", gp.M}, {"gp_feasible", gp.feasible}, {"basic_M", basic.M}, {"basic_feasible", basic.feasible}};
  for (int g = 0; g <= 2; ++g)
    for (long long d = 1; d <= 12; ++d) {
      for (bool gpos : {false, true}) {
        CurveContext x;
        x.genus = g;
        x.degree = d;
        x.n = {2, 1, 3};
        x.general_position = gpos;
        auto s = stability_range(x);
        x.pointed = true;
        auto sp = stability_range(x);
        for (long long k = 1; k <= 6; ++k) {
          ++n2;
          if (s.connectivity(k) != s.M * k - 2 * g - 2 && conn.is_null())
            conn = {{"genus", g}, {"d", d}, {"k", k}, {"value", s.connectivity(k)}};
          if (sp.connectivity(k) != s.connectivity(k) - kPointedOffset && pointed.is_null())
            pointed = {{"genus", g}, {"d", d}, {"k", k}};
        }
        if (sp.I != s.I - kPointedOffset && pointed.is_null()) pointed = {{"genus", g}, {"d", d}, {"I", sp.I}};
        for (long long k = 1; k <= 5; ++k) {
          ++n4;
          CurveContext m = x;
          m.pointed = false;
          m.degree *= k;
          for (auto& v : m.n) v *= k;
          if (stability_range(m).M != k * s.M && mono.is_null())
            mono = {{"genus", g}, {"d", d}, {"k", k}, {"general_position", gpos}};
        }
      }
    }
  {
    CurveContext a;
    a.degree = 5;
    bool ok = rr_unobstructed(a, 0, 5);
    a.genus = 1;
    a.degree = 2;
    ok = ok && !rr_unobstructed(a, 1, 1);
    CurveContext b;
    b.degree = 3;
    b.n = {2, 2, 0};
    b.general_position = true;
    ok = ok && gp_unobstructed(b, 0, {2, 2, 0}).ok;
    CurveContext e;
    e.degree = 1;
    e.n = {1};
    ok = ok && expected_section_dim(e, 0, 0) == 6 && expected_section_dim(e, 0, 1) == 4 &&
         expected_section_dim(e, 1, 0) == 3;
    bool threw = false;
    try {
      gp_unobstructed(e, 0, {0});
    } catch (const InputError&) {
      threw = true;
    }
    if (!ok || !threw) tests = {{"detail", "unobstructedness or section-dimension example mismatch"}};
  }
  return {make_check("stability", "class_5_2_2_2_constants", 1, consts),
          make_check("stability", "connectivity_affine", n2, conn),
          make_check("stability", "pointed_offset", n2, pointed),
          make_check("stability", "multiples_scale_linearly", n4, mono),
          make_check("stability", "unobstructedness_examples", 6, tests)};
}

// -------------------------------------------------------------------- build-p

// kappa-bounded universe types rebuilt without PSystem: w-types from
// partitions, per-entry kappa from single-entry relative types.
std::set<std::string> kappa_filtered(const PSystem& P) {
  const auto& cat = P.catalog();
  const auto L = P.blowup().lattice;
  const int v = P.context().ambient_dim;
  const bool pointed = P.flavor() == PFlavor::pointed;
  const auto& wdeg = P.w_degrees();
  const int R = static_cast<int>(wdeg.size());
  const int wlines = pointed ? R - 1 : R;
  const auto& b = P.bounds();
  const long long I = P.I();
  const ElementId extra = static_cast<ElementId>(R);

  std::map<std::pair<std::size_t, std::size_t>, long long> kcache;
  auto entry_kappa = [&](std::size_t lo, std::size_t up, bool base) {
    auto it = kcache.find({lo, up});
    long long k;
    if (it != kcache.end()) {
      k = it->second;
    } else {
      auto t = CombinatorialType::relative(L, {TypeEntry{cat.at(lo).depth(), cat.at(up).depth()}});
      k = lo == up ? 0 : kappa_of(t, v);
      kcache[{lo, up}] = k;
    }
    return (base && lo != up) ? k + 1 : k;  // the basepoint is not counted in supp
  };
  auto ok_upper = [&](std::size_t x, bool base) {
    if (cat.at(x).total_depth() > b.max_depth) return false;
    if (!pointed) return true;
    return letters_of(cat.at(x), extra) <= (base ? 1 : 0);
  };

  std::vector<std::vector<std::size_t>> wtypes{{}};
  for (int i = 1; i <= wlines; ++i) {
    std::vector<std::vector<long long>> parts;
    std::vector<long long> cur;
    std::function<void(long long, long long)> part = [&](long long n, long long mx) {
      if (n == 0) {
        parts.push_back(cur);
        return;
      }
      for (long long a = std::min(n, mx); a >= 1; --a) {
        cur.push_back(a);
        part(n - a, a);
        cur.pop_back();
      }
    };
    part(wdeg[static_cast<std::size_t>(i - 1)], wdeg[static_cast<std::size_t>(i - 1)]);
    std::vector<std::vector<std::size_t>> next;
    for (const auto& w : wtypes)
      for (const auto& p : parts) {
        auto nw = w;
        for (long long a : p)
          nw.push_back(cat.index_of(parse_word(L, std::to_string(a) + "*l" + std::to_string(i))));
        next.push_back(nw);
      }
    wtypes = std::move(next);
  }
  std::size_t blo = 0;
  if (pointed) blo = cat.index_of(parse_word(L, "1*l" + std::to_string(R)));

  std::set<std::string> out;
  for (const auto& w : wtypes) {
    // choose an upper for every w point (itself = unmoved), then new points
    std::vector<std::pair<std::size_t, std::size_t>> cur;
    std::function<void(std::size_t, long long, int)> rec_w;
    std::function<void(std::size_t, long long, int)> rec_new;
    auto emit = [&](long long k, int strict) {
      std::vector<std::size_t> bases{0};
      if (pointed) {
        bases.clear();
        for (std::size_t x = 0; x < cat.size(); ++x)
          if (cat.leq(blo, x) && (x == blo || ok_upper(x, true))) bases.push_back(x);
      }
      for (auto bx : bases) {
        long long kk = k + (pointed ? entry_kappa(blo, bx, true) : 0);
        int s = strict + ((pointed && bx != blo) ? 1 : 0);
        if (s == 0 || kk > I) continue;
        std::vector<TypeEntry> es;
        for (auto [lo, up] : cur) es.push_back({cat.at(lo).depth(), cat.at(up).depth()});
        auto t = pointed ? CombinatorialType::pointed(L, {cat.at(blo).depth(), cat.at(bx).depth()}, es)
                         : CombinatorialType::relative(L, es);
        out.insert(type_string(t));
      }
    };
    rec_new = [&](std::size_t from, long long k, int strict) {
      emit(k, strict);
      if (strict >= b.max_points) return;
      for (std::size_t x = std::max<std::size_t>(from, 1); x < cat.size(); ++x) {
        if (!ok_upper(x, false)) continue;
        long long kk = k + entry_kappa(0, x, false);
        if (kk > I + 64) continue;
        cur.emplace_back(0, x);
        rec_new(x, kk, strict + 1);
        cur.pop_back();
      }
    };
    rec_w = [&](std::size_t i, long long k, int strict) {
      if (i == w.size()) {
        rec_new(1, k, strict);
        return;
      }
      for (std::size_t x = 0; x < cat.size(); ++x) {
        if (!cat.leq(w[i], x)) continue;
        bool moved = x != w[i];
        if (moved && (!ok_upper(x, false) || strict >= b.max_points)) continue;
        // equal w points take nondecreasing uppers to avoid repeats
        if (i > 0 && w[i - 1] == w[i] && x < cur.back().second) continue;
        cur.emplace_back(w[i], x);
        rec_w(i + 1, k + entry_kappa(w[i], x, false), strict + (moved ? 1 : 0));
        cur.pop_back();
      }
    };
    rec_w(0, 0, 0);
  }
  return out;
}

Check certificate_check(const std::string& name, const CurveContext& ctx, PFlavor f,
                        UniverseBounds b) {
  auto s = stability_range(ctx);
  PSystem P(ctx, s.I, f, b);
  auto cert = P.certify();
  json cex = nullptr;
  if (!cert.passed) cex = certificate_json(cert);
  auto c = make_check("build-p", name, cert.universe_size, cex);
  c.note = "I=" + std::to_string(s.I) + " members=" + std::to_string(cert.members) +
           " kappa_bounded=" + std::to_string(cert.kappa_bounded);
  return c;
}

std::vector<Check> suite_build_p() {
  std::vector<Check> out;
  for (long long d : {7, 9, 11}) {
    CurveContext c;
    c.degree = d;
    c.n = {2, 2, 2};
    auto s = stability_range(c);
    PSystem P(c, s.I, PFlavor::plain);
    auto cert = P.certify();
    json cex = nullptr;
    if (!cert.passed) cex = certificate_json(cert);
    auto ch = make_check("build-p", "plain_certificate_d" + std::to_string(d), cert.universe_size, cex);
    ch.note = "I=" + std::to_string(s.I) + " members=" + std::to_string(cert.members) +
              " kappa_bounded=" + std::to_string(cert.kappa_bounded);
    out.push_back(std::move(ch));

    std::set<std::string> lib;
    json member = nullptr;
    for (const auto& t : P.kappa_bounded()) {
      lib.insert(type_string(t));
      if (!P.member(t) && member.is_null()) member = type_string(t);
    }
    auto oracle = kappa_filtered(P);
    json diff = nullptr;
    if (lib != oracle) {
      std::vector<std::string> only_lib, only_oracle;
      std::set_difference(lib.begin(), lib.end(), oracle.begin(), oracle.end(), std::back_inserter(only_lib));
      std::set_difference(oracle.begin(), oracle.end(), lib.begin(), lib.end(), std::back_inserter(only_oracle));
      diff = {{"only_certificate", only_lib.empty() ? json(nullptr) : json(only_lib.front())},
              {"only_filter", only_oracle.empty() ? json(nullptr) : json(only_oracle.front())},
              {"certificate_count", lib.size()},
              {"filter_count", oracle.size()}};
    } else if (!member.is_null()) {
      diff = {{"not_member", member}};
    }
    out.push_back(make_check("build-p", "kappa_filter_cross_check_d" + std::to_string(d), oracle.size(), diff));
  }
  {
    CurveContext c;
    c.degree = 9;
    c.n = {2, 2, 2};
    c.pointed = true;
    out.push_back(certificate_check("pointed_certificate_d9", c, PFlavor::pointed, {2, 3}));
  }
  for (auto [d, n] : {std::pair{5LL, 2LL}, std::pair{10LL, 4LL}}) {
    CurveContext c;
    c.degree = d;
    c.n = {n, n, n};
    c.general_position = true;
    auto ch = certificate_check("general_position_certificate_d" + std::to_string(d), c,
                                PFlavor::general_position, {2, 3});
    ch.status = CheckStatus::info;
    ch.note += "; literal general-position membership, recorded as a finding";
    out.push_back(std::move(ch));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "lattice",      "catalogue",       "closure",    "divisors", "mu-vanishing", "mobius-euler",
      "superadditivity", "rank-kappa", "antisymmetry", "delpezzo", "stability",    "build-p"};
  return names;
}

std::vector<Check> run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "lattice") return suite_lattice();
  if (name == "catalogue") return suite_catalogue();
  if (name == "closure") return suite_closure();
  if (name == "divisors") return suite_divisors();
  if (name == "mu-vanishing") return suite_mu_vanishing();
  if (name == "mobius-euler") return suite_mobius_euler();
  if (name == "superadditivity") return suite_superadditivity();
  if (name == "rank-kappa") return suite_rank_kappa();
  if (name == "antisymmetry") return suite_antisymmetry();
  if (name == "delpezzo") return suite_delpezzo(seed);
  if (name == "stability") return suite_stability();
  if (name == "build-p") return suite_build_p();
  throw InputError("unknown suite '" + name + "'");
}

Report cmd_verify(const VerifyOptions& o) {
  for (const auto& s : o.suites)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw InputError("unknown suite '" + s + "'");
  if (o.jobs < 1) throw InputError("jobs must be at least 1");
  Report rep;
  rep.command = "verify";
  rep.args = {{"suites", o.suites}, {"seed", o.seed}};
  rep.bounds = {{"closure", "depth functions with values <= 3, r <= 3"},
                {"mu", "single and two-point supports, total depth <= 4, r <= 3"},
                {"antisymmetry", "points <= 2, depth <= 2, r <= 3"},
                {"build_p", "points <= 3, depth <= 4"}};

  std::vector<std::vector<Check>> results(o.suites.size());
  std::vector<std::string> errors(o.suites.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < o.suites.size(); i = next++) {
      try {
        results[i] = run_suite(o.suites[i], o.seed);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(o.jobs), o.suites.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < o.suites.size(); ++i) {
    if (!errors[i].empty()) {
      rep.checks.push_back(make_check(o.suites[i], "suite_completed", 0, json{{"exception", errors[i]}}));
      continue;
    }
    for (auto& c : results[i]) rep.checks.push_back(std::move(c));
  }
  for (const auto& c : rep.checks)
    if (c.status == CheckStatus::info) rep.notes.push_back("finding: " + c.suite + "/" + c.name);
  return rep;
}

}  // namespace strata::app
