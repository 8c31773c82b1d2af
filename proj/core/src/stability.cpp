#include "strata/stability.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "strata/errors.hpp"

namespace strata {

long long CurveContext::sum_n() const {
  long long s = 0;
  for (long long x : n) s = checked::add(s, x);
  return s;
}

long long CurveContext::n_at(int j) const {
  return (j >= 1 && j <= lines()) ? n[static_cast<std::size_t>(j - 1)] : 0;
}

void CurveContext::validate() const {
  if (genus < 0) throw InputError("genus must be nonnegative");
  if (n.empty()) throw InputError("at least one line is required");
  for (long long x : n)
    if (x < 0) throw InputError("line degrees must be nonnegative");
  if (ambient_dim < 3) throw InputError("ambient dimension must be at least 3");
}

bool rr_unobstructed(const CurveContext& ctx, long long m0, long long ml) {
  return checked::sub(checked::sub(ctx.degree, m0), ml) >= 2LL * ctx.genus - 1;
}

GpResult gp_unobstructed(const CurveContext& ctx, long long m0, const std::vector<long long>& mvec) {
  if (!ctx.general_position) throw InputError("general position test needs general_position set");
  if (static_cast<int>(mvec.size()) != ctx.lines())
    throw InputError("multiplicity vector must have one entry per line");
  long long total = 0;
  for (long long m : mvec) total = checked::add(total, m);
  GpResult r{true, 0};
  for (int j = 1; j <= ctx.ambient_dim; ++j) {
    long long mj = j <= ctx.lines() ? mvec[static_cast<std::size_t>(j - 1)] : 0;
    long long slack = checked::sub(checked::add(checked::sub(ctx.degree, m0), 2 - 2LL * ctx.genus),
                                   checked::sub(total, mj));
    if (slack < 0) {
      r.ok = false;
      r.h1_bound = checked::add(r.h1_bound, -slack);
    }
  }
  return r;
}

long long expected_section_dim(const CurveContext& ctx, long long m0, long long ml) {
  const long long v = ctx.ambient_dim;
  long long a = checked::mul(v, ctx.degree + 1 - ctx.genus);
  a = checked::sub(a, checked::mul(v, m0));
  return checked::sub(a, checked::mul(v - 1, ml));
}

StabilityRange stability_range(const CurveContext& ctx) {
  ctx.validate();
  StabilityRange s;
  const long long base = checked::sub(ctx.degree, ctx.sum_n());
  if (ctx.general_position) {
    long long mn = ctx.n_at(1);
    for (int j = 1; j <= ctx.ambient_dim; ++j) {
      mn = std::min(mn, ctx.n_at(j));
      s.conditions.push_back(checked::add(base, ctx.n_at(j)));
    }
    s.M = checked::add(base, mn);
    s.feasible = true;
    for (int j = 1; j <= ctx.ambient_dim; ++j) {
      if (s.conditions[static_cast<std::size_t>(j - 1)] <= 0) {
        s.feasible = false;
        s.reason = "d - sum n + n_" + std::to_string(j) + " <= 0";
        break;
      }
    }
  } else {
    s.M = base;
    s.feasible = s.M > 0;
    if (!s.feasible) s.reason = "d - sum n <= 0";
  }
  s.I = checked::sub(s.M, 2LL * ctx.genus);
  s.slope = s.M;
  s.intercept = -2LL * ctx.genus - 2;
  if (ctx.pointed) {
    s.I -= kPointedOffset;
    s.intercept -= kPointedOffset;
  }
  return s;
}

std::string to_string(PFlavor f) {
  switch (f) {
    case PFlavor::plain: return "plain";
    case PFlavor::general_position: return "general_position";
    case PFlavor::pointed: return "pointed";
  }
  return "?";
}

std::size_t PSystem::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto x : k) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

namespace {

using Pair = std::pair<std::uint32_t, std::uint32_t>;

PSystem::Key make_key(std::uint32_t blo, std::uint32_t bup, std::vector<Pair> pairs) {
  std::sort(pairs.begin(), pairs.end());
  PSystem::Key k{blo, bup};
  k.reserve(2 + 2 * pairs.size());
  for (auto [lo, up] : pairs) {
    k.push_back(lo);
    k.push_back(up);
  }
  return k;
}

std::vector<Pair> pairs_of(const PSystem::Key& k) {
  std::vector<Pair> p;
  for (std::size_t i = 2; i + 1 < k.size(); i += 2) p.emplace_back(k[i], k[i + 1]);
  return p;
}

void partitions(long long n, long long maxpart, std::vector<long long>& cur,
                std::vector<std::vector<long long>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (long long a = std::min(n, maxpart); a >= 1; --a) {
    cur.push_back(a);
    partitions(n - a, a, cur, out);
    cur.pop_back();
  }
}

}  // namespace

PSystem::PSystem(const CurveContext& ctx, long long I, PFlavor flavor, UniverseBounds bounds)
    : ctx_(ctx), I_(I), flavor_(flavor), bounds_(bounds) {
  ctx_.validate();
  if (bounds_.max_points < 1 || bounds_.max_depth < 1)
    throw InputError("universe bounds must be positive");
  if (flavor_ == PFlavor::general_position && !ctx_.general_position)
    throw InputError("general position flavor needs general_position set");
  const bool pointed = flavor_ == PFlavor::pointed;
  ctx_.pointed = pointed;
  wdeg_ = ctx_.n;
  if (pointed) wdeg_.push_back(1);
  const int R = static_cast<int>(wdeg_.size());
  blowup_ = build_blowup_poset(R, ctx_.ambient_dim);
  long long maxn = *std::max_element(wdeg_.begin(), wdeg_.end());
  int len = static_cast<int>(std::max<long long>(bounds_.max_depth, maxn)) + 1;
  catalog_ = std::make_unique<ChainCatalog>(blowup_.lattice, len);

  const std::size_t N = catalog_->size();
  const std::size_t E = blowup_.lattice->size();
  covers_below_.assign(N, {});
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b : catalog_->covers_above(a)) covers_below_[b].push_back(a);
  letters_.assign(N, std::vector<long long>(E, 0));
  gamma_.resize(N);
  rank_.resize(N);
  for (std::size_t c = 0; c < N; ++c) {
    const Chain& ch = catalog_->at(c);
    for (const auto& l : ch.word()) letters_[c][l.element] += l.count;
    gamma_[c] = extend_function(blowup_.gamma, ch);
    rank_[c] = extend_function(blowup_.rank, ch);
  }
  pair_stats_.assign(N * N, {});
  for (std::size_t lo = 0; lo < N; ++lo) {
    for (std::size_t up = 0; up < N; ++up) {
      if (!catalog_->leq(lo, up)) continue;
      PairStats& s = pair_stats_[lo * N + up];
      s.weight = (gamma_[up] - gamma_[lo]) - (rank_[up] - rank_[lo]);
      s.dm.resize(E);
      for (std::size_t q = 0; q < E; ++q) s.dm[q] = letters_[up][q] - letters_[lo][q];
    }
  }
  build_universe();
}

std::optional<std::uint32_t> PSystem::sum_index(std::uint32_t a, std::uint32_t b) const {
  Chain s = saturate(pointwise_sum(catalog_->at(a).depth(), catalog_->at(b).depth()));
  auto i = catalog_->index_of(s.depth());
  if (!i) return std::nullopt;
  return static_cast<std::uint32_t>(*i);
}

void PSystem::build_universe() {
  const ChainCatalog& cat = *catalog_;
  const bool pointed = flavor_ == PFlavor::pointed;
  const int R = static_cast<int>(wdeg_.size());
  const ElementId extra = blowup_.line(R);
  auto upper_ok = [&](std::size_t x, bool base) {
    if (cat.at(x).total_depth() > bounds_.max_depth) return false;
    if (!pointed) return true;
    return letters_[x][extra] <= (base ? 1 : 0);
  };

  std::vector<std::uint32_t> fresh;
  for (std::size_t x = 1; x < cat.size(); ++x)
    if (upper_ok(x, false)) fresh.push_back(static_cast<std::uint32_t>(x));

  std::uint32_t blo = kNone;
  std::vector<std::uint32_t> base_ups{kNone};
  if (pointed) {
    blo = static_cast<std::uint32_t>(
        cat.index_of(chain_from_word(blowup_.lattice, {Letter{extra, 1}})));
    base_ups.clear();
    for (std::size_t x = 0; x < cat.size(); ++x)
      if (cat.leq(blo, x) && (x == blo || upper_ok(x, true)))
        base_ups.push_back(static_cast<std::uint32_t>(x));
  }

  // w-types: products of partitions of the line degrees (basepoint excluded)
  const int wlines = pointed ? R - 1 : R;
  std::vector<std::vector<std::vector<long long>>> parts(static_cast<std::size_t>(wlines));
  for (int i = 0; i < wlines; ++i) {
    std::vector<long long> cur;
    partitions(wdeg_[static_cast<std::size_t>(i)], wdeg_[static_cast<std::size_t>(i)], cur,
               parts[static_cast<std::size_t>(i)]);
  }

  struct Group {
    std::uint32_t w;
    int mult;
    std::vector<std::uint32_t> ups;
  };
  auto emit_for = [&](const std::vector<Group>& groups) {
    std::vector<Pair> cur;
    std::function<void(std::size_t, int, int)> rec_group;
    std::function<void(int, std::size_t, int)> rec_new;
    auto finish = [&](int strict) {
      for (auto bup : base_ups) {
        int s = strict + ((pointed && bup != blo) ? 1 : 0);
        if (s == 0) continue;
        universe_.push_back(make_key(blo, bup, cur));
      }
    };
    rec_new = [&](int left, std::size_t from, int strict) {
      finish(strict);
      if (left == 0) return;
      for (std::size_t i = from; i < fresh.size(); ++i) {
        cur.emplace_back(0U, fresh[i]);
        rec_new(left - 1, i, strict + 1);
        cur.pop_back();
      }
    };
    // choose a multiset of moved uppers for group g, then recurse
    std::function<void(std::size_t, int, int, int, std::size_t)> rec_moved;
    rec_moved = [&](std::size_t g, int moved, int left, int strict, std::size_t from) {
      const Group& G = groups[g];
      // stop moving more points of this group
      {
        std::size_t mark = cur.size();
        for (int u = moved; u < G.mult; ++u) cur.emplace_back(G.w, G.w);
        rec_group(g + 1, left, strict);
        cur.resize(mark);
      }
      if (moved == G.mult || left == 0) return;
      for (std::size_t i = from; i < G.ups.size(); ++i) {
        cur.emplace_back(G.w, G.ups[i]);
        rec_moved(g, moved + 1, left - 1, strict + 1, i);
        cur.pop_back();
      }
    };
    rec_group = [&](std::size_t g, int left, int strict) {
      if (g == groups.size()) {
        rec_new(left, 0, strict);
        return;
      }
      rec_moved(g, 0, left, strict, 0);
    };
    rec_group(0, bounds_.max_points, 0);
  };

  std::vector<std::size_t> choice(static_cast<std::size_t>(wlines), 0);
  for (;;) {
    std::vector<std::uint32_t> ws;
    for (int i = 0; i < wlines; ++i) {
      for (long long a : parts[static_cast<std::size_t>(i)][choice[static_cast<std::size_t>(i)]]) {
        auto c = chain_from_word(blowup_.lattice,
                                 {Letter{blowup_.line(i + 1), static_cast<int>(a)}});
        ws.push_back(static_cast<std::uint32_t>(cat.index_of(c)));
      }
    }
    std::sort(ws.begin(), ws.end());
    std::vector<Group> groups;
    for (std::size_t i = 0; i < ws.size();) {
      std::size_t j = i;
      while (j < ws.size() && ws[j] == ws[i]) ++j;
      Group G{ws[i], static_cast<int>(j - i), {}};
      for (std::size_t x = 0; x < cat.size(); ++x)
        if (cat.lt(ws[i], x) && upper_ok(x, false)) G.ups.push_back(static_cast<std::uint32_t>(x));
      groups.push_back(std::move(G));
      i = j;
    }
    emit_for(groups);
    int i = 0;
    for (; i < wlines; ++i) {
      auto& c = choice[static_cast<std::size_t>(i)];
      if (++c < parts[static_cast<std::size_t>(i)].size()) break;
      c = 0;
    }
    if (i == wlines) break;
  }

  std::sort(universe_.begin(), universe_.end());
  universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
  index_.reserve(universe_.size());
  for (std::size_t i = 0; i < universe_.size(); ++i) index_.emplace(universe_[i], i);
}

long long PSystem::kappa_key(const Key& k) const {
  long long kap = 0;
  if (k[0] != kNone) kap += stats(k[0], k[1]).weight;
  for (auto [lo, up] : pairs_of(k)) {
    kap += stats(lo, up).weight;
    if (lo != up) kap -= 1;
  }
  return kap;
}

bool PSystem::minimal_key(const Key& k) const {
  int strict = 0;
  bool cover = false;
  auto look = [&](std::uint32_t lo, std::uint32_t up) {
    if (lo == up) return;
    ++strict;
    const auto& ups = catalog_->covers_above(lo);
    cover = std::find(ups.begin(), ups.end(), up) != ups.end();
  };
  if (k[0] != kNone) look(k[0], k[1]);
  for (auto [lo, up] : pairs_of(k)) look(lo, up);
  return strict == 1 && cover;
}

bool PSystem::member_key(const Key& k) const {
  if (minimal_key(k)) return true;
  const bool gp = flavor_ == PFlavor::general_position ||
                  (flavor_ == PFlavor::pointed && ctx_.general_position);
  const int R = static_cast<int>(wdeg_.size());
  if (!gp) {
    long long total = 0, sum = 0;
    auto add = [&](std::uint32_t up) { total += catalog_->at(up).total_depth(); };
    if (k[0] != kNone) add(k[1]);
    for (auto [lo, up] : pairs_of(k)) add(up);
    for (long long x : wdeg_) sum += x;
    return total <= I_ + sum;
  }
  std::vector<long long> m(blowup_.lattice->size(), 0);
  auto add = [&](std::uint32_t lo, std::uint32_t up) {
    const auto& dm = stats(lo, up).dm;
    for (std::size_t q = 0; q < m.size(); ++q) m[q] += dm[q];
  };
  if (k[0] != kNone) add(k[0], k[1]);
  for (auto [lo, up] : pairs_of(k)) add(lo, up);
  long long lines_total = 0;
  for (int i = 1; i <= R; ++i) lines_total += m[blowup_.line(i)];
  for (int j = 1; j <= ctx_.ambient_dim; ++j) {
    long long s = m[blowup_.zero()] + lines_total - (j <= R ? m[blowup_.line(j)] : 0);
    if (s > I_) return false;
  }
  return true;
}

bool PSystem::unobstructed_upper(const std::vector<long long>& m) const {
  CurveContext c = ctx_;
  c.n = wdeg_;
  const int R = static_cast<int>(wdeg_.size());
  const bool gp = flavor_ == PFlavor::general_position ||
                  (flavor_ == PFlavor::pointed && ctx_.general_position);
  long long ml = 0;
  std::vector<long long> mvec;
  for (int i = 1; i <= R; ++i) {
    ml += m[blowup_.line(i)];
    mvec.push_back(m[blowup_.line(i)]);
  }
  if (!gp) return rr_unobstructed(c, m[blowup_.zero()], ml);
  c.general_position = true;
  return gp_unobstructed(c, m[blowup_.zero()], mvec).ok;
}

std::string PSystem::key_string(const Key& k) const { return type_string(to_type(k)); }

CombinatorialType PSystem::to_type(const Key& k) const {
  auto entry = [&](std::uint32_t lo, std::uint32_t up) {
    return TypeEntry{catalog_->at(lo).depth(), catalog_->at(up).depth()};
  };
  std::vector<TypeEntry> es;
  for (auto [lo, up] : pairs_of(k)) es.push_back(entry(lo, up));
  if (k[0] != kNone) return CombinatorialType::pointed(blowup_.lattice, entry(k[0], k[1]), es);
  return CombinatorialType::relative(blowup_.lattice, es);
}

std::optional<PSystem::Key> PSystem::to_key(const CombinatorialType& t) const {
  if (t.lattice().size() != blowup_.lattice->size())
    throw InputError("type lattice does not match the system");
  const bool pointed = flavor_ == PFlavor::pointed;
  if (pointed != (t.flavor() == TypeFlavor::pointed) || t.flavor() == TypeFlavor::absolute)
    throw InputError("type flavor does not match the system");
  auto idx = [&](const DepthFunction& g) -> std::optional<std::uint32_t> {
    auto i = catalog_->index_of(g);
    if (!i) return std::nullopt;
    return static_cast<std::uint32_t>(*i);
  };
  std::vector<Pair> pairs;
  for (const auto& e : t.entries()) {
    auto lo = idx(e.lower), up = idx(e.upper);
    if (!lo || !up) return std::nullopt;
    pairs.emplace_back(*lo, *up);
  }
  std::uint32_t blo = kNone, bup = kNone;
  if (t.basepoint()) {
    auto lo = idx(t.basepoint()->lower), up = idx(t.basepoint()->upper);
    if (!lo || !up) return std::nullopt;
    blo = *lo;
    bup = *up;
  } else if (pointed) {
    throw InputError("pointed type without a basepoint");
  }
  return make_key(blo, bup, pairs);
}

bool PSystem::member(const CombinatorialType& t) const {
  auto k = to_key(t);
  if (!k) throw InputError("type exceeds the catalog depth of the system");
  return member_key(*k);
}

long long PSystem::kappa(const CombinatorialType& t) const {
  return kappa_of(t, ctx_.ambient_dim);
}

bool PSystem::in_universe(const CombinatorialType& t) const {
  auto k = to_key(t);
  return k && index_.count(*k) > 0;
}

std::vector<CombinatorialType> PSystem::universe() const {
  std::vector<CombinatorialType> out;
  out.reserve(universe_.size());
  for (const auto& k : universe_) out.push_back(to_type(k));
  return out;
}

std::vector<CombinatorialType> PSystem::kappa_bounded() const {
  std::vector<CombinatorialType> out;
  for (const auto& k : universe_)
    if (kappa_key(k) <= I_) out.push_back(to_type(k));
  return out;
}

PCertificate PSystem::certify() const {
  const ChainCatalog& cat = *catalog_;
  PCertificate cert;
  cert.universe_size = universe_.size();
  cert.downward.name = "downward_closed";
  cert.contains.name = "contains_kappa_bounded";
  cert.unobstructed.name = "successors_unobstructed";
  const int R = static_cast<int>(wdeg_.size());
  const std::size_t E = blowup_.lattice->size();

  std::vector<std::uint32_t> atoms;
  for (int i = 1; i <= R; ++i)
    atoms.push_back(static_cast<std::uint32_t>(
        cat.index_of(chain_from_word(blowup_.lattice, {Letter{blowup_.line(i), 1}}))));

  auto fail = [&](ClauseResult& c, const std::string& what) {
    if (c.passed) c.offending = what;
    c.passed = false;
  };
  auto has_strict = [](const Key& k) {
    if (k[0] != kNone && k[0] != k[1]) return true;
    for (std::size_t i = 2; i + 1 < k.size(); i += 2)
      if (k[i] != k[i + 1]) return true;
    return false;
  };
  auto check_move = [&](const Key& from, const Key& to, const char* move) {
    if (!has_strict(to)) return;
    auto it = index_.find(to);
    if (it == index_.end()) {
      ++cert.downward.skipped;
      return;
    }
    ++cert.downward.checked;
    if (!member_key(to))
      fail(cert.downward, key_string(from) + " -" + move + "-> " + key_string(to) + " leaves P");
  };
  auto is_line_multiple = [&](std::uint32_t c) {
    if (c == 0) return true;
    if (letters_[c][blowup_.zero()] != 0) return false;
    int lines = 0;
    for (int i = 1; i <= R; ++i)
      if (letters_[c][blowup_.line(i)] > 0) ++lines;
    return lines == 1;
  };

  for (const auto& k : universe_) {
    const bool mem = member_key(k);
    if (mem) ++cert.members;
    if (kappa_key(k) <= I_) {
      ++cert.kappa_bounded;
      ++cert.contains.checked;
      if (!mem) fail(cert.contains, key_string(k) + " has kappa <= I but is not in P");
    }
    if (!mem) continue;
    const std::uint32_t blo = k[0], bup = k[1];
    auto pairs = pairs_of(k);

    // (a) lowering one upper to a cover below it
    if (blo != kNone && blo != bup)
      for (auto y : covers_below_[bup])
        if (cat.leq(blo, y))
          check_move(k, make_key(blo, static_cast<std::uint32_t>(y), pairs), "lower");
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      auto [lo, up] = pairs[p];
      if (lo == up) continue;
      for (auto y : covers_below_[up]) {
        if (!cat.leq(lo, y)) continue;
        auto q = pairs;
        if (y == lo && lo == 0) q.erase(q.begin() + static_cast<std::ptrdiff_t>(p));
        else q[p].second = static_cast<std::uint32_t>(y);
        check_move(k, make_key(blo, bup, q), "lower");
      }
    }
    // (a) merges of two points, or of a new point into the basepoint
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      for (std::size_t q = p + 1; q < pairs.size(); ++q) {
        auto lo = sum_index(pairs[p].first, pairs[q].first);
        if (!lo || !is_line_multiple(*lo)) continue;
        auto up = sum_index(pairs[p].second, pairs[q].second);
        if (!up) {
          ++cert.downward.skipped;
          continue;
        }
        auto r = pairs;
        r.erase(r.begin() + static_cast<std::ptrdiff_t>(q));
        r[p] = {*lo, *up};
        check_move(k, make_key(blo, bup, r), "merge");
      }
      if (blo != kNone && pairs[p].first == 0) {
        auto up = sum_index(bup, pairs[p].second);
        if (!up) {
          ++cert.downward.skipped;
          continue;
        }
        auto r = pairs;
        r.erase(r.begin() + static_cast<std::ptrdiff_t>(p));
        check_move(k, make_key(blo, *up, r), "merge");
      }
    }

    // (c) essential successors
    std::vector<long long> m(E, 0);
    if (blo != kNone)
      for (std::size_t e = 0; e < E; ++e) m[e] += letters_[bup][e];
    for (auto [lo, up] : pairs)
      for (std::size_t e = 0; e < E; ++e) m[e] += letters_[up][e];
    auto essential_except = [&](int skip_pair, bool skip_base) {
      if (!skip_base && blo != kNone && !cat.is_essential_pair(blo, bup)) return false;
      for (std::size_t p = 0; p < pairs.size(); ++p)
        if (static_cast<int>(p) != skip_pair && !cat.is_essential_pair(pairs[p].first, pairs[p].second))
          return false;
      return true;
    };
    auto test = [&](std::uint32_t old_up, std::uint32_t new_up, const char* what) {
      std::vector<long long> my = m;
      for (std::size_t e = 0; e < E; ++e) {
        if (old_up != kNone) my[e] -= letters_[old_up][e];
        my[e] += letters_[new_up][e];
      }
      ++cert.unobstructed.checked;
      if (!unobstructed_upper(my)) fail(cert.unobstructed, key_string(k) + " " + what);
    };
    if (blo != kNone && essential_except(-1, true))
      for (auto y : cat.covers_above(bup))
        if (cat.is_essential_pair(blo, y)) test(bup, static_cast<std::uint32_t>(y), "basepoint successor");
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if (!essential_except(static_cast<int>(p), false)) continue;
      for (auto y : cat.covers_above(pairs[p].second))
        if (cat.is_essential_pair(pairs[p].first, y))
          test(pairs[p].second, static_cast<std::uint32_t>(y), "point successor");
    }
    if (essential_except(-1, false))
      for (auto a : atoms) test(kNone, a, "new point successor");
  }
  cert.passed = cert.downward.passed && cert.contains.passed && cert.unobstructed.passed;
  return cert;
}

PSystem build_P(const CurveContext& ctx, long long I, PFlavor flavor, UniverseBounds bounds) {
  return PSystem(ctx, I, flavor, bounds);
}

}  // namespace strata
