#include "strata/types.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "strata/errors.hpp"

namespace strata {

std::string to_string(TypeFlavor f) {
  switch (f) {
    case TypeFlavor::absolute: return "absolute";
    case TypeFlavor::relative: return "relative";
    case TypeFlavor::pointed: return "pointed";
  }
  return "?";
}

TypeFlavor parse_flavor(const std::string& s) {
  if (s == "absolute") return TypeFlavor::absolute;
  if (s == "relative") return TypeFlavor::relative;
  if (s == "pointed") return TypeFlavor::pointed;
  throw InputError("unknown flavor '" + s + "'");
}

bool entry_less(const TypeEntry& a, const TypeEntry& b) {
  if (!(a.upper == b.upper)) return canonical_less(a.upper, b.upper);
  if (!(a.lower == b.lower)) return canonical_less(a.lower, b.lower);
  return false;
}

CombinatorialType::CombinatorialType(LatticePtr lattice, TypeFlavor flavor)
    : lattice_(std::move(lattice)), flavor_(flavor) {}

CombinatorialType CombinatorialType::absolute(LatticePtr lattice,
                                              const std::vector<DepthFunction>& points) {
  CombinatorialType t(lattice, TypeFlavor::absolute);
  for (const auto& g : points) t.add({DepthFunction(lattice), g});
  return t;
}

CombinatorialType CombinatorialType::relative(LatticePtr lattice, std::vector<TypeEntry> entries) {
  CombinatorialType t(std::move(lattice), TypeFlavor::relative);
  for (auto& e : entries) t.add(std::move(e));
  return t;
}

CombinatorialType CombinatorialType::pointed(LatticePtr lattice, TypeEntry basepoint,
                                             std::vector<TypeEntry> entries) {
  CombinatorialType t(std::move(lattice), TypeFlavor::pointed);
  t.set_basepoint(std::move(basepoint));
  for (auto& e : entries) t.add(std::move(e));
  return t;
}

namespace {

void check_entry(const MeetSemilattice& L, const TypeEntry& e) {
  if (e.lower.size() != L.size() || e.upper.size() != L.size())
    throw InputError("type entry from another lattice");
  if (!pointwise_leq(e.lower, e.upper)) throw InputError("type entry has lower above upper");
}

}  // namespace

void CombinatorialType::add(TypeEntry e) {
  check_entry(*lattice_, e);
  if (e.upper.is_trivial()) throw InputError("type entries must be nontrivial");
  if (flavor_ == TypeFlavor::absolute && !e.lower.is_trivial())
    throw InputError("absolute type entries have a trivial lower");
  auto pos = std::upper_bound(entries_.begin(), entries_.end(), e, entry_less);
  entries_.insert(pos, std::move(e));
}

void CombinatorialType::set_basepoint(TypeEntry e) {
  if (flavor_ != TypeFlavor::pointed) throw InputError("only pointed types carry a basepoint");
  check_entry(*lattice_, e);
  basepoint_ = std::move(e);
}

bool CombinatorialType::is_saturated() const {
  auto sat = [](const TypeEntry& e) {
    return e.lower.is_meet_preserving() && e.upper.is_meet_preserving();
  };
  if (basepoint_ && !sat(*basepoint_)) return false;
  return std::all_of(entries_.begin(), entries_.end(), sat);
}

bool type_less(const CombinatorialType& a, const CombinatorialType& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.basepoint().has_value() != b.basepoint().has_value()) return !a.basepoint().has_value();
  if (a.basepoint() && !(*a.basepoint() == *b.basepoint()))
    return entry_less(*a.basepoint(), *b.basepoint());
  return std::lexicographical_compare(a.entries().begin(), a.entries().end(),
                                      b.entries().begin(), b.entries().end(), entry_less);
}

namespace {

std::string depth_string(const DepthFunction& g) {
  if (g.is_meet_preserving()) return word_string(Chain(g));
  std::string out = "[";
  const auto& L = g.lattice();
  bool first = true;
  for (ElementId q : L.proper_elements()) {
    if (!first) out += ",";
    out += L.label(q) + ":" + std::to_string(g[q]);
    first = false;
  }
  return out + "]";
}

std::string entry_string(const TypeEntry& e, bool relative) {
  if (!relative) return depth_string(e.upper);
  return depth_string(e.lower) + (e.strict() ? "<" : "=") + depth_string(e.upper);
}

}  // namespace

std::string type_string(const CombinatorialType& t) {
  const bool rel = t.flavor() != TypeFlavor::absolute;
  std::string out;
  if (t.basepoint()) out += "*(" + entry_string(*t.basepoint(), true) + ")";
  out += "{";
  for (std::size_t i = 0; i < t.entries().size(); ++i) {
    if (i) out += "; ";
    out += entry_string(t.entries()[i], rel);
  }
  return out + "}";
}

CombinatorialType type_of(const LabeledConfiguration& x) {
  const auto& lat = x.lattice_ptr();
  CombinatorialType t(lat, x.pointed() ? TypeFlavor::pointed : TypeFlavor::absolute);
  for (const auto& [label, g] : x.points()) t.add({DepthFunction(lat), g});
  if (x.pointed()) t.set_basepoint({DepthFunction(lat), *x.basepoint()});
  return t;
}

CombinatorialType type_of(const RelativePair& p) {
  const auto& lat = p.upper.lattice_ptr();
  CombinatorialType t(lat, p.upper.pointed() ? TypeFlavor::pointed : TypeFlavor::relative);
  for (const auto& [label, g] : p.upper.points()) t.add({p.lower.at(label), g});
  if (p.upper.pointed()) t.set_basepoint({*p.lower.basepoint(), *p.upper.basepoint()});
  return t;
}

CombinatorialType saturate_type(const CombinatorialType& t) {
  CombinatorialType out(t.lattice_ptr(), t.flavor());
  auto sat = [](const TypeEntry& e) {
    return TypeEntry{saturate(e.lower).depth(), saturate(e.upper).depth()};
  };
  for (const auto& e : t.entries()) out.add(sat(e));
  if (t.basepoint()) out.set_basepoint(sat(*t.basepoint()));
  return out;
}

CombinatorialType as_relative(const CombinatorialType& t) {
  if (t.flavor() != TypeFlavor::absolute) return t;
  CombinatorialType out(t.lattice_ptr(), TypeFlavor::relative);
  for (const auto& e : t.entries()) out.add(e);
  return out;
}

namespace {

// Entry packed as lower depths followed by upper depths.
using Packed = std::vector<int>;

Packed pack(const TypeEntry& e) {
  Packed p(e.lower.depths());
  p.insert(p.end(), e.upper.depths().begin(), e.upper.depths().end());
  return p;
}

bool dominated(const Packed& h, const Packed& sum) {
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] > sum[i]) return false;
  return true;
}

void add_into(Packed& acc, const Packed& g, int sign) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += sign * g[i];
}

// Targets h[0..s), sources g[0..l). When `pinned` is set, target 0 and source
// 0 are basepoints and source 0 must map to target 0.
bool assignment_exists(const std::vector<Packed>& h, const std::vector<Packed>& g, bool pinned) {
  if (h.empty()) return g.empty();
  const std::size_t width = h.front().size();
  std::vector<Packed> sums(h.size(), Packed(width, 0));
  Packed remaining(width, 0);
  for (const auto& x : g) add_into(remaining, x, 1);
  std::vector<std::size_t> order(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) order[i] = i;
  // Heavy sources first, basepoint source pinned in front.
  std::stable_sort(order.begin() + (pinned ? 1 : 0), order.end(), [&](std::size_t a, std::size_t b) {
    int sa = 0, sb = 0;
    for (int v : g[a]) sa += v;
    for (int v : g[b]) sb += v;
    return sa > sb;
  });
  auto feasible = [&]() {
    for (std::size_t j = 0; j < h.size(); ++j) {
      Packed cap = sums[j];
      add_into(cap, remaining, 1);
      if (!dominated(h[j], cap)) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t k) -> bool {
    if (!feasible()) return false;
    if (k == order.size()) {
      for (std::size_t j = 0; j < h.size(); ++j)
        if (!dominated(h[j], sums[j])) return false;
      return true;
    }
    const std::size_t src = order[k];
    add_into(remaining, g[src], -1);
    const bool is_base = pinned && src == 0;
    for (std::size_t j = 0; j < (is_base ? 1 : h.size()); ++j) {
      add_into(sums[j], g[src], 1);
      bool ok = self(self, k + 1);
      add_into(sums[j], g[src], -1);
      if (ok) {
        add_into(remaining, g[src], 1);
        return true;
      }
    }
    add_into(remaining, g[src], 1);
    return false;
  };
  return rec(rec, 0);
}

std::vector<Packed> packed_entries(const CombinatorialType& t) {
  std::vector<Packed> out;
  if (t.basepoint()) out.push_back(pack(*t.basepoint()));
  for (const auto& e : t.entries()) out.push_back(pack(e));
  return out;
}

}  // namespace

bool leq_plus(const CombinatorialType& s, const CombinatorialType& t) {
  if (s.flavor() != t.flavor()) throw InputError("leq_plus needs types of one flavor");
  if (s.lattice().size() != t.lattice().size()) throw InputError("types over different lattices");
  const bool pinned = s.flavor() == TypeFlavor::pointed;
  if (pinned && (!s.basepoint() || !t.basepoint()))
    throw InputError("pointed types need a basepoint entry");
  // Every non-basepoint target is nontrivial, so it needs a source.
  if (s.size() > t.size()) return false;
  return assignment_exists(packed_entries(s), packed_entries(t), pinned);
}

namespace {

// All order-compatible g <= c with saturate(g) = c.
std::vector<DepthFunction> all_preimages(const DepthFunction& c) {
  const auto& L = c.lattice();
  const auto& proper = L.proper_elements();
  std::vector<int> d(L.size(), 0);
  std::vector<DepthFunction> out;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == proper.size()) {
      for (ElementId p : proper)
        for (ElementId q : proper)
          if (L.leq(p, q) && d[p] > d[q]) return;
      auto g = unchecked_depths(c.lattice_ptr(), d);
      if (saturate(g).depth() == c) out.push_back(std::move(g));
      return;
    }
    for (int v = 0; v <= c[proper[k]]; ++v) {
      d[proper[k]] = v;
      self(self, k + 1);
    }
    d[proper[k]] = 0;
  };
  rec(rec, 0);
  return out;
}

template <class T, class Leq>
std::vector<T> minimal_only(const std::vector<T>& xs, Leq leq) {
  std::vector<T> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < xs.size() && minimal; ++j)
      if (i != j && !(xs[i] == xs[j]) && leq(xs[j], xs[i])) minimal = false;
    if (minimal) out.push_back(xs[i]);
  }
  return out;
}

}  // namespace

std::vector<DepthFunction> minimal_preimages(const Chain& c) {
  return minimal_only(all_preimages(c.depth()), pointwise_leq);
}

std::vector<TypeEntry> minimal_preimages(const TypeEntry& e) {
  if (!e.lower.is_meet_preserving() || !e.upper.is_meet_preserving())
    throw InputError("preimages need a saturated entry");
  auto lows = all_preimages(e.lower);
  auto ups = all_preimages(e.upper);
  std::vector<TypeEntry> pairs;
  for (const auto& a : lows)
    for (const auto& b : ups)
      if (pointwise_leq(a, b)) pairs.push_back({a, b});
  return minimal_only(pairs, [](const TypeEntry& x, const TypeEntry& y) {
    return pointwise_leq(x.lower, y.lower) && pointwise_leq(x.upper, y.upper);
  });
}

SaturatedOrder::SaturatedOrder(std::vector<CombinatorialType> universe)
    : universe_(std::move(universe)) {
  const std::size_t n = universe_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!universe_[i].is_saturated()) throw InputError("universe types must be saturated");
    if (i && universe_[i].flavor() != universe_[0].flavor())
      throw InputError("universe types must share one flavor");
  }
  words_ = (n + 63) / 64;
  step_.assign(n * words_, 0);

  std::map<Packed, std::vector<Packed>> cache;
  auto preimages = [&](const TypeEntry& e) -> const std::vector<Packed>& {
    Packed key = pack(e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<Packed> pre;
    for (const auto& m : minimal_preimages(e)) pre.push_back(pack(m));
    return cache.emplace(std::move(key), std::move(pre)).first->second;
  };

  const bool pinned = n > 0 && universe_[0].flavor() == TypeFlavor::pointed;
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<const std::vector<Packed>*> choices;
    if (universe_[a].basepoint()) choices.push_back(&preimages(*universe_[a].basepoint()));
    for (const auto& e : universe_[a].entries()) choices.push_back(&preimages(e));
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) {
        step_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
        continue;
      }
      if (universe_[a].size() > universe_[b].size()) continue;
      auto targets = packed_entries(universe_[b]);
      // Try every product of minimal preimages of the entries of a.
      std::vector<std::size_t> pick(choices.size(), 0);
      std::vector<Packed> src(choices.size());
      bool found = false;
      while (!found) {
        for (std::size_t i = 0; i < choices.size(); ++i) src[i] = (*choices[i])[pick[i]];
        // a's preimage is the smaller side: it must sit below sums of b's entries.
        found = assignment_exists(src, targets, pinned);
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == choices[i]->size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
      if (found) step_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
    }
  }
  closure_ = step_;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (bit(closure_, i, k))
        for (std::size_t w = 0; w < words_; ++w) closure_[i * words_ + w] |= closure_[k * words_ + w];
}

std::size_t SaturatedOrder::index_of(const CombinatorialType& t) const {
  for (std::size_t i = 0; i < universe_.size(); ++i)
    if (universe_[i] == t) return i;
  throw InputError("type " + type_string(t) + " is outside the universe");
}

std::vector<std::size_t> SaturatedOrder::witness(std::size_t a, std::size_t b) const {
  if (!leq(a, b)) return {};
  std::vector<std::int64_t> prev(size(), -1);
  std::deque<std::size_t> queue{a};
  prev[a] = static_cast<std::int64_t>(a);
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    if (u == b) break;
    for (std::size_t v = 0; v < size(); ++v)
      if (prev[v] < 0 && one_step(u, v)) {
        prev[v] = static_cast<std::int64_t>(u);
        queue.push_back(v);
      }
  }
  std::vector<std::size_t> path{b};
  while (path.back() != a) path.push_back(static_cast<std::size_t>(prev[path.back()]));
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<std::pair<std::size_t, std::size_t>> SaturatedOrder::antisymmetry_violation() const {
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = a + 1; b < size(); ++b)
      if (leq(a, b) && leq(b, a)) return std::pair{a, b};
  return std::nullopt;
}

bool leq_plus_sat(const CombinatorialType& s, const CombinatorialType& t,
                  const SaturatedOrder& universe) {
  return universe.leq(universe.index_of(s), universe.index_of(t));
}

namespace {

bool allowed_lower(const Chain& c, LowerRange range) {
  if (range == LowerRange::any || c.is_trivial()) return true;
  auto w = c.word();
  if (w.size() != 1) return false;
  const auto& L = c.lattice();
  for (ElementId q : L.proper_elements())
    if (L.order().lt(w[0].element, q)) return false;
  return true;
}

}  // namespace

void for_each_saturated_type(const LatticePtr& lattice, const TypeBounds& bounds,
                             TypeFlavor flavor, bool essential_only,
                             const std::function<void(const CombinatorialType&)>& visit) {
  if (bounds.max_points < 0 || bounds.max_depth < 0) throw InputError("bounds must be nonnegative");
  ChainCatalog cat(lattice, bounds.max_depth);
  std::vector<TypeEntry> strict, base;
  for (std::size_t w = 0; w < cat.size(); ++w) {
    if (flavor == TypeFlavor::absolute && w != cat.trivial_index()) continue;
    if (!allowed_lower(cat.at(w), bounds.lowers)) continue;
    for (std::size_t x = 0; x < cat.size(); ++x) {
      if (!cat.leq(w, x)) continue;
      if (essential_only && !cat.is_essential_pair(w, x)) continue;
      TypeEntry e{cat.at(w).depth(), cat.at(x).depth()};
      if (w != x) strict.push_back(e);
      if (flavor == TypeFlavor::pointed) base.push_back(std::move(e));
    }
  }
  std::sort(strict.begin(), strict.end(), entry_less);
  std::sort(base.begin(), base.end(), entry_less);

  std::vector<std::size_t> pick;
  auto emit = [&](const std::optional<TypeEntry>& bp) {
    CombinatorialType t(lattice, flavor);
    if (bp) t.set_basepoint(*bp);
    for (std::size_t i : pick) t.add(strict[i]);
    visit(t);
  };
  auto rec = [&](auto&& self, std::size_t from, const std::optional<TypeEntry>& bp) -> void {
    emit(bp);
    if (static_cast<int>(pick.size()) == bounds.max_points) return;
    for (std::size_t i = from; i < strict.size(); ++i) {
      pick.push_back(i);
      self(self, i, bp);
      pick.pop_back();
    }
  };
  if (flavor == TypeFlavor::pointed) {
    for (const auto& b : base) rec(rec, 0, b);
  } else {
    rec(rec, 0, std::nullopt);
  }
}

std::vector<CombinatorialType> enumerate_saturated_types(const LatticePtr& lattice,
                                                         const TypeBounds& bounds,
                                                         TypeFlavor flavor,
                                                         bool essential_only) {
  std::vector<CombinatorialType> out;
  for_each_saturated_type(lattice, bounds, flavor, essential_only,
                          [&](const CombinatorialType& t) { out.push_back(t); });
  std::sort(out.begin(), out.end(), type_less);
  return out;
}

KappaParts kappa_parts(const CombinatorialType& t, int v) {
  if (t.flavor() == TypeFlavor::absolute) throw InputError("kappa is defined on relative types");
  const auto gamma = blowup_gamma_weights(t.lattice(), v);
  const auto rank = rank_weights(t.lattice());
  KappaParts k;
  auto add = [&](const TypeEntry& e, bool counts_supp) {
    Chain lo = saturate(e.lower), up = saturate(e.upper);
    k.gamma = checked::add(k.gamma, checked::sub(extend_function(gamma, up), extend_function(gamma, lo)));
    k.rank = checked::add(k.rank, checked::sub(extend_function(rank, up), extend_function(rank, lo)));
    if (counts_supp && !(lo == up)) ++k.supp;
  };
  for (const auto& e : t.entries()) add(e, true);
  if (t.basepoint()) add(*t.basepoint(), false);
  return k;
}

long long kappa_of(const CombinatorialType& t, int v) { return kappa_parts(t, v).kappa(); }

StratumRecord stratum_record(const CombinatorialType& t0, int v, bool with_mu) {
  if (!t0.is_saturated()) throw InputError("stratum records need a saturated type");
  CombinatorialType t = as_relative(t0);
  StratumRecord r{t0, 0, 0, 0, 0, 0, true, 1, with_mu, {}};
  auto parts = kappa_parts(t, v);
  r.gamma = parts.gamma;
  r.rank = parts.rank;
  r.supp = parts.supp;
  r.kappa = parts.kappa();
  r.config_dim_real = 2 * parts.supp;

  std::vector<TypeEntry> all(t.entries());
  if (t.basepoint()) all.push_back(*t.basepoint());
  int len = 0;
  for (const auto& e : all) len = std::max(len, e.upper.max_depth());
  ChainCatalog cat(t.lattice_ptr(), len);
  MuStalk stalk;
  stalk.unit = true;
  stalk.betti = {1};
  for (const auto& e : all) {
    std::size_t w = *cat.index_of(e.lower), x = *cat.index_of(e.upper);
    if (!cat.is_essential_pair(w, x)) r.essential = false;
    auto p = product_interval(cat, {w}, {x});
    r.mobius = checked::mul(r.mobius, mobius(p, 0, static_cast<ElementId>(p.size() - 1)));
    if (with_mu) stalk = tensor(stalk, mu_stalk(cat, {w}, {x}));
  }
  if (with_mu) r.mu_betti = stalk.betti;
  return r;
}

}  // namespace strata
