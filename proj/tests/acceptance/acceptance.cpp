// Acceptance criteria 1-11. Each prints one PASS/FAIL line with its time
// against a pinned limit; expected values come from the oracles below.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "strata/chains.hpp"
#include "strata/delpezzo.hpp"
#include "strata/divisors.hpp"
#include "strata/homalg.hpp"
#include "strata/lattice.hpp"
#include "strata/stability.hpp"
#include "strata/types.hpp"

#ifndef STRATA_CLI_PATH
#define STRATA_CLI_PATH "strata"
#endif

using namespace strata;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int g_failed = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s > limit_s) o.fail("time " + std::to_string(s) + "s over limit");
  if (!o.pass) ++g_failed;
  std::printf("criterion %2d %-26s %s  %7.2fs / %5.0fs  %s\n", id, name.c_str(), o.pass ? "PASS" : "FAIL", s,
              limit_s, o.detail.c_str());
  std::fflush(stdout);
}

// ---------------------------------------------------------------- oracles

// On Q_r a saturated chain has at most one line above g(0); its word is
// g(0) letters 0 and g(l_i) - g(0) letters l_i.
long long m_zero(const Chain& c) { return c[0]; }
long long m_lines(const Chain& c, int r) {
  long long s = 0;
  for (int i = 1; i <= r; ++i) s += c[static_cast<ElementId>(i)] - c[0];
  return s;
}
long long rank_oracle(const Chain& c, int r) { return 2 * m_zero(c) + m_lines(c, r); }
long long gamma_oracle(const Chain& c, int r, int v) { return 2LL * v * m_zero(c) + 2LL * (v - 1) * m_lines(c, r); }

// Least upper bound in the catalog by brute force.
std::size_t join_oracle(const ChainCatalog& cat, std::size_t a, std::size_t b) {
  std::vector<std::size_t> ub;
  for (std::size_t z = 0; z < cat.size(); ++z)
    if (cat.leq(a, z) && cat.leq(b, z)) ub.push_back(z);
  for (std::size_t z : ub) {
    bool least = true;
    for (std::size_t y : ub) least = least && cat.leq(z, y);
    if (least) return z;
  }
  throw std::runtime_error("no join in catalog");
}

std::vector<std::size_t> covers_oracle(const ChainCatalog& cat, std::size_t w) {
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < cat.size(); ++y) {
    if (!cat.lt(w, y)) continue;
    bool cover = true;
    for (std::size_t z = 0; z < cat.size() && cover; ++z) cover = !(cat.lt(w, z) && cat.lt(z, y));
    if (cover) out.push_back(y);
  }
  return out;
}

bool essential_oracle(const ChainCatalog& cat, std::size_t w, std::size_t x) {
  if (w == x) return true;
  std::size_t j = w;
  bool any = false;
  for (std::size_t y : covers_oracle(cat, w))
    if (cat.leq(y, x)) {
      j = any ? join_oracle(cat, j, y) : y;
      any = true;
    }
  return any && j == x;
}

// Moebius by the defining recursion on the catalog order.
long long mobius_oracle(const ChainCatalog& cat, std::size_t w, std::size_t x,
                        std::map<std::pair<std::size_t, std::size_t>, long long>& memo) {
  if (w == x) return 1;
  if (!cat.leq(w, x)) return 0;
  auto it = memo.find({w, x});
  if (it != memo.end()) return it->second;
  long long s = 0;
  for (std::size_t z = 0; z < cat.size(); ++z)
    if (cat.leq(w, z) && cat.lt(z, x)) s += mobius_oracle(cat, w, z, memo);
  memo[{w, x}] = -s;
  return -s;
}

std::vector<std::vector<int>> depth_functions(const MeetSemilattice& L, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> d(L.size(), 0);
  const auto& proper = L.proper_elements();
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == proper.size()) {
      for (ElementId p : proper)
        for (ElementId q : proper)
          if (L.leq(p, q) && d[p] > d[q]) return;
      out.push_back(d);
      return;
    }
    for (int v = 0; v <= m; ++v) {
      d[proper[k]] = v;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

bool meet_preserving(const MeetSemilattice& L, const std::vector<int>& d) {
  for (ElementId p : L.proper_elements())
    for (ElementId q : L.proper_elements())
      if (d[L.meet(p, q)] != std::min(d[p], d[q])) return false;
  return true;
}

bool below(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::string vec_string(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// Pairs (w, x) with single- or two-point support and total upper depth <= 4.
void for_each_pair(int r, const ChainCatalog& cat,
                   const std::function<void(const std::vector<std::size_t>&, const std::vector<std::size_t>&)>& f) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t w = 0; w < cat.size(); ++w)
    for (std::size_t x = 0; x < cat.size(); ++x)
      if (cat.leq(w, x)) pairs.emplace_back(w, x);
  (void)r;
  for (auto [w, x] : pairs)
    if (w != x) f({w}, {x});
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (std::size_t q = p; q < pairs.size(); ++q) {
      auto [w1, x1] = pairs[p];
      auto [w2, x2] = pairs[q];
      if (x1 == 0 || x2 == 0 || (w1 == x1 && w2 == x2)) continue;
      if (cat.at(x1).total_depth() + cat.at(x2).total_depth() > 4) continue;
      f({w1, w2}, {x1, x2});
    }
}

// Independent enumeration of the kappa-bounded part of a PSystem universe.
std::set<std::string> kappa_bounded_oracle(const PSystem& P) {
  const auto& cat = P.catalog();
  const auto L = P.blowup().lattice;
  const int v = P.context().ambient_dim;
  const bool pointed = P.flavor() == PFlavor::pointed;
  const auto& wdeg = P.w_degrees();
  const int R = static_cast<int>(wdeg.size());
  const int wlines = pointed ? R - 1 : R;
  const int max_points = P.bounds().max_points;
  const int max_depth = P.bounds().max_depth;
  const long long I = P.I();
  auto weight = [&](std::size_t i) { return gamma_oracle(cat.at(i), R, v) - rank_oracle(cat.at(i), R); };
  auto entry_kappa = [&](std::size_t lo, std::size_t up, bool base) {
    if (lo == up) return 0LL;
    return weight(up) - weight(lo) - (base ? 0 : 1);
  };
  auto extra_letters = [&](std::size_t x) {
    const Chain& c = cat.at(x);
    return static_cast<long long>(c[static_cast<ElementId>(R)] - c[0]);
  };
  auto ok_upper = [&](std::size_t x, bool base) {
    if (cat.at(x).total_depth() > max_depth) return false;
    return !pointed || extra_letters(x) <= (base ? 1 : 0);
  };
  auto line_multiple = [&](int i, long long a) {
    std::vector<int> d(L->size(), 0);
    d[static_cast<std::size_t>(i)] = static_cast<int>(a);
    return *cat.index_of(DepthFunction(L, d));
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
        for (long long a : p) nw.push_back(line_multiple(i, a));
        std::sort(nw.begin(), nw.end());
        next.push_back(nw);
      }
    wtypes = std::move(next);
  }
  const std::size_t blo = pointed ? line_multiple(R, 1) : 0;

  std::set<std::string> out;
  for (const auto& w : wtypes) {
    std::vector<std::pair<std::size_t, std::size_t>> cur;
    auto emit = [&](long long k, int strict) {
      std::vector<std::size_t> bases{blo};
      if (pointed)
        for (std::size_t x = 0; x < cat.size(); ++x)
          if (cat.lt(blo, x) && ok_upper(x, true)) bases.push_back(x);
      for (auto bx : bases) {
        long long kk = k + (pointed ? entry_kappa(blo, bx, true) : 0);
        int s = strict + ((pointed && bx != blo) ? 1 : 0);
        if (s == 0 || kk > I) continue;
        std::vector<TypeEntry> es;
        for (auto [lo, up] : cur) es.push_back({cat.at(lo).depth(), cat.at(up).depth()});
        out.insert(type_string(pointed ? CombinatorialType::pointed(L, {cat.at(blo).depth(), cat.at(bx).depth()}, es)
                                       : CombinatorialType::relative(L, es)));
      }
    };
    std::function<void(std::size_t, long long, int)> rec_new = [&](std::size_t from, long long k, int strict) {
      emit(k, strict);
      if (strict >= max_points) return;
      for (std::size_t x = std::max<std::size_t>(from, 1); x < cat.size(); ++x) {
        long long kk = k + entry_kappa(0, x, false);
        if (!ok_upper(x, false) || kk > I) continue;
        cur.emplace_back(0, x);
        rec_new(x, kk, strict + 1);
        cur.pop_back();
      }
    };
    std::function<void(std::size_t, long long, int)> rec_w = [&](std::size_t i, long long k, int strict) {
      if (i == w.size()) {
        rec_new(1, k, strict);
        return;
      }
      for (std::size_t x = 0; x < cat.size(); ++x) {
        if (!cat.leq(w[i], x)) continue;
        bool moved = x != w[i];
        if (moved && (!ok_upper(x, false) || strict >= max_points)) continue;
        if (i > 0 && w[i - 1] == w[i] && x < cur.back().second) continue;
        long long kk = k + entry_kappa(w[i], x, false);
        if (kk > I) continue;
        cur.emplace_back(w[i], x);
        rec_w(i + 1, kk, strict + (moved ? 1 : 0));
        cur.pop_back();
      }
    };
    rec_w(0, 0, 0);
  }
  return out;
}

std::string run_cli(const std::string& args, int& status) {
  std::string cmd = std::string("\"") + STRATA_CLI_PATH + "\" " + args;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("cannot run " + cmd);
  std::string out;
  std::array<char, 65536> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  status = pclose(p);
  return out;
}

}  // namespace

int main() {
  criterion(1, "essential catalogue", 5, [] {
    Outcome o;
    for (int r = 1; r <= 3; ++r) {
      auto L = build_blowup_poset(r, 3).lattice;
      for (int i = 1; i <= r; ++i) {
        const std::string li = "l" + std::to_string(i);
        for (int d = 0; d <= 3; ++d) {
          Chain w = d == 0 ? Chain::trivial(L) : parse_word(L, std::to_string(d) + "*" + li);
          std::set<std::string> want;
          if (d == 0) {
            for (int j = 1; j <= r; ++j) want.insert("1*l" + std::to_string(j));
            if (r >= 2) want.insert("1*0");
          } else {
            want = {std::to_string(d + 1) + "*" + li, d == 1 ? "1*0" : std::to_string(d - 1) + "*" + li + "+1*0",
                    std::to_string(d) + "*" + li + "+1*0"};
          }
          std::set<std::string> got;
          for (const auto& e : essential_above(w, w.total_depth() + r)) got.insert(word_string(e.join));
          if (got != want) o.fail("r=" + std::to_string(r) + " lower " + word_string(w));
        }
      }
    }
    return o;
  });

  criterion(2, "closure and adjunction", 30, [] {
    Outcome o;
    for (int r = 1; r <= 3; ++r) {
      auto L = build_blowup_poset(r, 3).lattice;
      auto all = depth_functions(*L, 3);
      std::vector<std::vector<int>> sat, mp;
      for (const auto& d : all) {
        sat.push_back(saturate(DepthFunction(L, d)).depth().depths());
        if (meet_preserving(*L, d)) mp.push_back(d);
      }
      for (std::size_t a = 0; a < all.size(); ++a) {
        const auto& g = all[a];
        if (!below(g, sat[a])) o.fail("not extensive at " + vec_string(g));
        if (saturate(DepthFunction(L, sat[a])).depth().depths() != sat[a]) o.fail("not idempotent at " + vec_string(g));
        if (!meet_preserving(*L, sat[a])) o.fail("not saturated at " + vec_string(g));
        for (std::size_t b = 0; b < all.size(); ++b)
          if (below(g, all[b]) && !below(sat[a], sat[b])) o.fail("not monotone at " + vec_string(g));
        for (const auto& h : mp)
          if (below(g, h) != below(sat[a], h)) o.fail("adjunction fails at " + vec_string(g) + " " + vec_string(h));
      }
    }
    return o;
  });

  criterion(3, "mu stalk vanishing", 60, [] {
    Outcome o;
    std::size_t zero = 0, single = 0;
    for (int r = 1; r <= 3; ++r) {
      ChainCatalog cat(build_blowup_poset(r, 3).lattice, 4);
      for_each_pair(r, cat, [&](const std::vector<std::size_t>& w, const std::vector<std::size_t>& x) {
        bool ess = true;
        for (std::size_t k = 0; k < w.size(); ++k) ess = ess && essential_oracle(cat, w[k], x[k]);
        auto s = mu_stalk(cat, w, x);
        int nonzero = 0;
        for (long long b : s.betti) nonzero += b != 0;
        for (const auto& d : s.pair_cohomology.degrees) nonzero += d.torsion.empty() ? 0 : 1;
        if (!ess) {
          ++zero;
          if (nonzero != 0) o.fail("nonzero stalk at a non-essential pair, r=" + std::to_string(r));
        } else {
          ++single;
          if (nonzero != 1) o.fail("essential stalk not concentrated, r=" + std::to_string(r));
        }
      });
    }
    o.detail = o.pass ? std::to_string(zero) + " vanishing, " + std::to_string(single) + " concentrated" : o.detail;
    return o;
  });

  criterion(4, "moebius equals euler", 60, [] {
    Outcome o;
    std::size_t n = 0;
    for (int r = 1; r <= 3; ++r) {
      ChainCatalog cat(build_blowup_poset(r, 3).lattice, 4);
      std::map<std::pair<std::size_t, std::size_t>, long long> memo;
      for_each_pair(r, cat, [&](const std::vector<std::size_t>& w, const std::vector<std::size_t>& x) {
        ++n;
        long long mu = 1;
        for (std::size_t k = 0; k < w.size(); ++k) mu *= mobius_oracle(cat, w[k], x[k], memo);
        auto s = mu_stalk(cat, w, x);
        long long chi = 0;
        for (std::size_t d = 0; d < s.betti.size(); ++d) chi += (d % 2 ? -1 : 1) * s.betti[d];
        if (chi != mu) o.fail("r=" + std::to_string(r) + " chi " + std::to_string(chi) + " mu " + std::to_string(mu));
      });
    }
    if (o.pass) o.detail = std::to_string(n) + " pairs";
    return o;
  });

  criterion(5, "superadditivity", 10, [] {
    Outcome o;
    for (int r = 1; r <= 3; ++r) {
      auto L = build_blowup_poset(r, 3).lattice;
      auto chains = enumerate_chains(L, 3);
      for (long long j5 : {3, 4, 5}) {
        auto E5 = [&](const Chain& c) { return 5 * m_zero(c) + j5 * m_lines(c, r); };
        for (const auto& a : chains)
          for (const auto& b : chains) {
            Chain s = saturate(pointwise_sum(a.depth(), b.depth()));
            if (E5(s) > E5(a) + E5(b))
              o.fail("J=" + std::to_string(j5) + "/5 " + word_string(a) + " + " + word_string(b));
          }
      }
    }
    return o;
  });

  criterion(6, "rank bounded by kappa", 10, [] {
    Outcome o;
    const int v = 3;
    for (int r = 1; r <= 3; ++r) {
      auto Q = build_blowup_poset(r, v);
      ChainCatalog cat(Q.lattice, 3);
      std::vector<std::size_t> cur;
      std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (!cur.empty()) {
          LabeledConfiguration x(Q.lattice);
          long long rk = 0, ga = 0;
          for (std::size_t k = 0; k < cur.size(); ++k) {
            x.set("p" + std::to_string(k), cat.at(cur[k]).depth());
            rk += rank_oracle(cat.at(cur[k]), r);
            ga += gamma_oracle(cat.at(cur[k]), r, v);
          }
          long long kappa = ga - rk - static_cast<long long>(cur.size());
          if (rank_of(x) != rk || gamma_of(x, v) != ga) o.fail("weights disagree with the oracle");
          if (rk > kappa) o.fail("rank > kappa");
        }
        if (cur.size() == 3) return;
        for (std::size_t i = from; i < cat.size(); ++i) {
          cur.push_back(i);
          rec(i);
          cur.pop_back();
        }
      };
      rec(1);
      ChainCatalog big(Q.lattice, 4);
      auto kappa1 = [&](std::size_t i) {
        if (i == 0) return 0LL;
        return gamma_oracle(big.at(i), r, v) - rank_oracle(big.at(i), r) - 1;
      };
      for (std::size_t a = 0; a < big.size(); ++a)
        for (std::size_t b : covers_oracle(big, a))
          if (big.at(a).total_depth() <= 3 && kappa1(b) < kappa1(a) + 1)
            o.fail("successor growth " + word_string(big.at(a)) + " -> " + word_string(big.at(b)));
    }
    return o;
  });

  criterion(7, "sat order antisymmetry", 60, [] {
    Outcome o;
    for (int r = 1; r <= 3; ++r) {
      auto L = build_blowup_poset(r, 3).lattice;
      for (auto f : {TypeFlavor::absolute, TypeFlavor::relative}) {
        SaturatedOrder S(enumerate_saturated_types(L, TypeBounds{2, 2, LowerRange::any}, f, false));
        const std::size_t n = S.size();
        std::vector<std::vector<char>> c(n, std::vector<char>(n, 0));
        for (std::size_t a = 0; a < n; ++a) {
          c[a][a] = 1;
          for (std::size_t b = 0; b < n; ++b) c[a][b] |= S.one_step(a, b) ? 1 : 0;
        }
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t a = 0; a < n; ++a)
            if (c[a][k])
              for (std::size_t b = 0; b < n; ++b) c[a][b] |= c[k][b];
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) {
            if (static_cast<bool>(c[a][b]) != S.leq(a, b)) o.fail("closure mismatch");
            if (a != b && c[a][b] && c[b][a])
              o.fail("r=" + std::to_string(r) + " " + type_string(S.at(a)) + " ~ " + type_string(S.at(b)));
          }
      }
    }
    return o;
  });

  criterion(8, "del pezzo", 10, [] {
    Outcome o;
    auto pairing = [](const DPClass& a, const DPClass& b) {
      long long s = a.d * b.d;
      for (std::size_t i = 0; i < 4; ++i) s -= a.n[i] * b.n[i];
      return s;
    };
    auto sample = random_ample_classes(20240917, 1000);
    if (sample.size() != 1000) o.fail("sample size");
    const DPClass K{3, {1, 1, 1, 1}};
    for (std::size_t i = 0; i < sample.size(); ++i) {
      const auto& a = sample[i];
      auto u = dp_normalize(a).cls;
      bool distinct = true;
      for (std::size_t p = 0; p < 4; ++p)
        for (std::size_t q = p + 1; q < 4; ++q) distinct = distinct && a.n[p] != a.n[q];
      for (auto [p, q] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        long long s = u.n[static_cast<std::size_t>(p)] + u.n[static_cast<std::size_t>(q)] + u.n[3];
        if (s > u.d || (distinct && s == u.d)) o.fail("normalize " + dp_string(a));
      }
      if (pairing(u, u) != pairing(a, a) || pairing(u, K) != pairing(a, K)) o.fail("normalize leaves the orbit");
      const auto& b = sample[(i + 1) % sample.size()];
      DPClass c = cremona(a, {1, 2, 3});
      DPClass expect{2 * a.d - a.n[0] - a.n[1] - a.n[2],
                     {a.d - a.n[1] - a.n[2], a.d - a.n[0] - a.n[2], a.d - a.n[0] - a.n[1], a.n[3]}};
      if (!(c == expect)) o.fail("cremona formula " + dp_string(a));
      if (!(cremona(c, {1, 2, 3}) == a)) o.fail("cremona not an involution");
      if (pairing(c, cremona(b, {1, 2, 3})) != pairing(a, b)) o.fail("cremona changes the pairing");
    }
    if (!(cremona(K, {1, 2, 3}) == K)) o.fail("cremona moves the anticanonical class");
    if (weyl_group().size() != 120) o.fail("weyl group order " + std::to_string(weyl_group().size()));
    std::set<std::array<long long, 5>> orbit{{50, 1, 3, 7, 12}};
    std::vector<DPClass> frontier{{50, {1, 3, 7, 12}}};
    while (!frontier.empty()) {
      DPClass a = frontier.back();
      frontier.pop_back();
      for (int g = 0; g < kWeylGenerators; ++g) {
        DPClass b = apply_generator(a, g);
        if (orbit.insert({b.d, b.n[0], b.n[1], b.n[2], b.n[3]}).second) frontier.push_back(b);
      }
    }
    if (orbit.size() != 120) o.fail("generic orbit size " + std::to_string(orbit.size()));
    return o;
  });

  criterion(9, "stability constants", 1, [] {
    Outcome o;
    CurveContext c;
    c.degree = 5;
    c.n = {2, 2, 2};
    c.general_position = true;
    auto gp = stability_range(c);
    if (!gp.feasible || gp.M != 1) o.fail("general position M = " + std::to_string(gp.M));
    c.general_position = false;
    if (stability_range(c).feasible) o.fail("basic clause should be infeasible");
    for (int g = 0; g <= 3; ++g)
      for (long long d = 1; d <= 20; ++d)
        for (bool gpos : {false, true}) {
          CurveContext x;
          x.genus = g;
          x.degree = d;
          x.n = {1, 2, 3};
          x.general_position = gpos;
          auto s = stability_range(x);
          x.pointed = true;
          auto p = stability_range(x);
          for (long long k = 1; k <= 5; ++k) {
            if (s.connectivity(k) != s.M * k - 2 * g - 2) o.fail("connectivity formula");
            if (p.connectivity(k) - s.connectivity(k) != -1) o.fail("pointed connectivity offset");
          }
          if (p.I - s.I != -1) o.fail("pointed I offset");
        }
    return o;
  });

  criterion(10, "build_P certificates", 120, [] {
    Outcome o;
    std::string detail;
    for (long long d : {7, 9, 11}) {
      CurveContext c;
      c.degree = d;
      c.n = {2, 2, 2};
      auto s = stability_range(c);
      PSystem P = build_P(c, s.I, PFlavor::plain);
      auto cert = P.certify();
      const std::string tag = "d=" + std::to_string(d);
      if (!cert.passed)
        o.fail(tag + ": " + cert.downward.offending + cert.contains.offending + cert.unobstructed.offending);
      auto oracle = kappa_bounded_oracle(P);
      std::set<std::string> lib;
      for (const auto& t : P.kappa_bounded()) {
        lib.insert(type_string(t));
        if (!P.member(t)) o.fail(tag + ": kappa-bounded type outside P: " + type_string(t));
      }
      if (lib != oracle)
        o.fail(tag + ": kappa filter disagrees (" + std::to_string(lib.size()) + " vs " +
               std::to_string(oracle.size()) + ")");
      detail += tag + " |U|=" + std::to_string(cert.universe_size) + " kappa<=I:" + std::to_string(oracle.size()) + " ";
    }
    if (o.pass) o.detail = detail;
    return o;
  });

  criterion(11, "determinism", 900, [] {
    Outcome o;
    auto run = [&](const std::string& jobs) {
      auto t0 = std::chrono::steady_clock::now();
      int st = 0;
      std::string out = run_cli("verify --suite all --jobs " + jobs, st);
      double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (st != 0) o.fail("verify exit status " + std::to_string(st) + " at --jobs " + jobs);
      if (s > 300) o.fail("full run took " + std::to_string(s) + "s at --jobs " + jobs);
      return out;
    };
    unsigned hw = std::max(1U, std::thread::hardware_concurrency());
    std::string a = run("1");
    std::string b = run("1");
    std::string c = run(std::to_string(hw));
    std::string d = run("4");
    if (a.empty()) o.fail("empty output");
    if (a != b) o.fail("two runs at --jobs 1 differ");
    if (a != c) o.fail("--jobs 1 and --jobs " + std::to_string(hw) + " differ");
    if (a != d) o.fail("--jobs 1 and --jobs 4 differ");
    if (o.pass) o.detail = std::to_string(a.size()) + " bytes identical across 4 runs";
    return o;
  });

  std::printf("%d criteria failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
