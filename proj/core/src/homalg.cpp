#include "strata/homalg.hpp"

#include <algorithm>
#include <numeric>

#include "strata/errors.hpp"

namespace strata {

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto v : s) {
    h ^= v;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool SimplicialComplex::add(Simplex s) {
  if (s.empty()) throw InputError("the empty simplex is not stored");
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i - 1] >= s[i]) throw InputError("simplex vertices must be strictly increasing");
  const std::size_t d = s.size() - 1;
  if (by_dim_.size() <= d) {
    by_dim_.resize(d + 1);
    index_.resize(d + 1);
  }
  auto [it, inserted] = index_[d].emplace(s, static_cast<std::uint32_t>(by_dim_[d].size()));
  if (inserted) by_dim_[d].push_back(std::move(s));
  return inserted;
}

void SimplicialComplex::add_closed(const Simplex& s) {
  if (s.size() >= 31) throw InputError("simplex too large to close");
  const std::uint32_t full = (1U << s.size()) - 1;
  for (std::uint32_t mask = full; mask > 0; --mask) {
    Simplex f;
    for (std::size_t j = 0; j < s.size(); ++j)
      if (mask >> j & 1U) f.push_back(s[j]);
    add(std::move(f));
  }
}

std::size_t SimplicialComplex::count(int d) const {
  if (d < 0 || static_cast<std::size_t>(d) >= by_dim_.size()) return 0;
  return by_dim_[static_cast<std::size_t>(d)].size();
}

std::size_t SimplicialComplex::size() const {
  std::size_t n = 0;
  for (const auto& v : by_dim_) n += v.size();
  return n;
}

long long SimplicialComplex::index_of(const Simplex& s) const {
  if (s.empty() || s.size() > index_.size()) return -1;
  const auto& m = index_[s.size() - 1];
  auto it = m.find(s);
  return it == m.end() ? -1 : static_cast<long long>(it->second);
}

bool SimplicialComplex::is_closed() const {
  Simplex f;
  for (std::size_t d = 1; d < by_dim_.size(); ++d)
    for (const auto& s : by_dim_[d])
      for (std::size_t i = 0; i < s.size(); ++i) {
        f.clear();
        for (std::size_t j = 0; j < s.size(); ++j)
          if (j != i) f.push_back(s[j]);
        if (!contains(f)) return false;
      }
  return true;
}

SparseMatrix SimplicialComplex::boundary(int d) const {
  if (d < 1) throw InputError("boundary needs dimension >= 1");
  SparseMatrix m(count(d - 1), count(d));
  Simplex f;
  for (std::size_t j = 0; j < m.cols; ++j) {
    const auto& s = by_dim_[static_cast<std::size_t>(d)][j];
    for (std::size_t i = 0; i < s.size(); ++i) {
      f.clear();
      for (std::size_t t = 0; t < s.size(); ++t)
        if (t != i) f.push_back(s[t]);
      auto row = index_of(f);
      if (row < 0) throw InputError("complex is not closed under faces");
      m.columns[j].emplace_back(static_cast<std::uint32_t>(row), i % 2 == 0 ? 1 : -1);
    }
    std::sort(m.columns[j].begin(), m.columns[j].end());
  }
  return m;
}

namespace {

// Chains of the strict order `lt` on vertices 0..n-1, which must be listed in
// a linear extension so that lt(a, b) implies a < b.
template <class Lt>
void add_chains(SimplicialComplex& k, std::size_t n, Lt&& lt) {
  std::vector<std::vector<std::uint32_t>> up(n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b)
      if (lt(a, b)) up[a].push_back(b);
  Simplex s;
  auto rec = [&](auto&& self, std::uint32_t v) -> void {
    s.push_back(v);
    k.add(s);
    for (std::uint32_t u : up[v]) self(self, u);
    s.pop_back();
  };
  for (std::uint32_t v = 0; v < n; ++v) rec(rec, v);
}

}  // namespace

OrderComplex order_complex(const Poset& p, std::vector<ElementId> subset) {
  std::sort(subset.begin(), subset.end());
  if (std::adjacent_find(subset.begin(), subset.end()) != subset.end())
    throw InputError("order complex subset has duplicates");
  for (auto e : subset)
    if (e >= p.size()) throw InputError("element index out of range");
  std::vector<std::size_t> below(p.size(), 0);
  for (auto a : subset)
    for (auto b : subset)
      if (p.leq(b, a)) ++below[a];
  std::stable_sort(subset.begin(), subset.end(),
                   [&](ElementId a, ElementId b) { return below[a] < below[b]; });
  OrderComplex out;
  out.vertices = subset;
  add_chains(out.complex, subset.size(),
             [&](std::uint32_t a, std::uint32_t b) { return p.lt(subset[a], subset[b]); });
  return out;
}

OrderComplex order_complex(const Poset& p) {
  std::vector<ElementId> all(p.size());
  std::iota(all.begin(), all.end(), 0);
  return order_complex(p, std::move(all));
}

bool HomologySummary::is_zero() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const DegreeGroup& g) {
    return g.betti == 0 && g.torsion.empty();
  });
}

bool HomologySummary::is_free() const {
  return std::all_of(degrees.begin(), degrees.end(),
                     [](const DegreeGroup& g) { return g.torsion.empty(); });
}

long long HomologySummary::euler() const {
  long long e = 0;
  for (std::size_t d = 0; d < degrees.size(); ++d)
    e = d % 2 == 0 ? checked::add(e, degrees[d].betti) : checked::sub(e, degrees[d].betti);
  return e;
}

std::vector<int> HomologySummary::support() const {
  std::vector<int> out;
  for (std::size_t d = 0; d < degrees.size(); ++d)
    if (degrees[d].betti != 0 || !degrees[d].torsion.empty()) out.push_back(static_cast<int>(d));
  return out;
}

namespace {

void trim(HomologySummary& h) {
  while (!h.degrees.empty() && h.degrees.back().betti == 0 && h.degrees.back().torsion.empty())
    h.degrees.pop_back();
}

struct RelativeComplex {
  std::vector<std::vector<std::uint32_t>> kept;  // per dim: indices into K
  std::vector<SparseMatrix> boundary;            // boundary[d]: C_d -> C_{d-1}, d >= 1
};

RelativeComplex relative_chains(const SimplicialComplex& k, const SimplicialComplex& l) {
  RelativeComplex rc;
  const int top = k.dim();
  rc.kept.resize(static_cast<std::size_t>(std::max(top + 1, 0)));
  std::vector<std::vector<std::int64_t>> pos(rc.kept.size());
  for (int d = 0; d <= top; ++d) {
    const auto& sims = k.simplices(d);
    pos[static_cast<std::size_t>(d)].assign(sims.size(), -1);
    for (std::uint32_t i = 0; i < sims.size(); ++i) {
      if (l.contains(sims[i])) continue;
      pos[static_cast<std::size_t>(d)][i] =
          static_cast<std::int64_t>(rc.kept[static_cast<std::size_t>(d)].size());
      rc.kept[static_cast<std::size_t>(d)].push_back(i);
    }
  }
  rc.boundary.resize(rc.kept.size());
  Simplex f;
  for (int d = 1; d <= top; ++d) {
    const auto ud = static_cast<std::size_t>(d);
    SparseMatrix m(rc.kept[ud - 1].size(), rc.kept[ud].size());
    for (std::size_t j = 0; j < rc.kept[ud].size(); ++j) {
      const auto& s = k.simplices(d)[rc.kept[ud][j]];
      for (std::size_t i = 0; i < s.size(); ++i) {
        f.clear();
        for (std::size_t t = 0; t < s.size(); ++t)
          if (t != i) f.push_back(s[t]);
        auto row = k.index_of(f);
        if (row < 0) throw InputError("complex is not closed under faces");
        auto r = pos[ud - 1][static_cast<std::size_t>(row)];
        if (r < 0) continue;
        m.columns[j].emplace_back(static_cast<std::uint32_t>(r), i % 2 == 0 ? 1 : -1);
      }
      std::sort(m.columns[j].begin(), m.columns[j].end());
    }
    rc.boundary[ud] = std::move(m);
  }
  return rc;
}

void require_subcomplex(const SimplicialComplex& k, const SimplicialComplex& l) {
  for (int d = 0; d <= l.dim(); ++d)
    for (const auto& s : l.simplices(d))
      if (!k.contains(s)) throw InputError("L is not a subcomplex of K");
}

void check_squared(const RelativeComplex& rc) {
  for (std::size_t d = 2; d < rc.boundary.size(); ++d) {
    auto prod = multiply(rc.boundary[d - 1], rc.boundary[d]);
    if (prod.nonzeros() != 0)
      throw InvariantViolation("boundary squared is nonzero in degree " + std::to_string(d));
  }
}

}  // namespace

void check_boundary_squared(const SimplicialComplex& k, const SimplicialComplex& l) {
  require_subcomplex(k, l);
  check_squared(relative_chains(k, l));
}

HomologySummary relative_homology(const SimplicialComplex& k, const SimplicialComplex& l) {
  require_subcomplex(k, l);
  auto rc = relative_chains(k, l);
  check_squared(rc);
  const std::size_t n = rc.kept.size();
  std::vector<SmithInvariants> inv(n + 1);
  for (std::size_t d = 1; d < n; ++d) inv[d] = smith_invariants(rc.boundary[d]);
  HomologySummary h;
  h.degrees.resize(n);
  for (std::size_t d = 0; d < n; ++d) {
    long long cells = static_cast<long long>(rc.kept[d].size());
    long long b = cells - static_cast<long long>(inv[d].rank) -
                  static_cast<long long>(inv[d + 1].rank);
    if (b < 0) throw InvariantViolation("negative Betti number");
    h.degrees[d].betti = b;
    h.degrees[d].torsion = inv[d + 1].torsion;
  }
  trim(h);
  return h;
}

HomologySummary homology(const SimplicialComplex& k) {
  return relative_homology(k, SimplicialComplex{});
}

HomologySummary cohomology_from_homology(const HomologySummary& h) {
  HomologySummary c;
  c.degrees.resize(h.degrees.size() + 1);
  for (std::size_t d = 0; d < h.degrees.size(); ++d) {
    c.degrees[d].betti = h.degrees[d].betti;
    c.degrees[d + 1].torsion = h.degrees[d].torsion;
  }
  trim(c);
  return c;
}

ReducedHomology reduced_homology(const SimplicialComplex& k) {
  ReducedHomology r;
  if (k.count(0) == 0) {
    r.groups.degrees.push_back({1, {}});
    return r;
  }
  auto h = homology(k);
  r.groups.degrees.push_back({0, {}});
  for (const auto& g : h.degrees) r.groups.degrees.push_back(g);
  r.groups.degrees[1].betti -= 1;
  trim(r.groups);
  return r;
}

bool MuStalk::is_zero() const {
  if (unit) return false;
  return std::all_of(betti.begin(), betti.end(), [](long long b) { return b == 0; }) &&
         pair_cohomology.is_free();
}

long long MuStalk::euler() const {
  long long e = 0;
  for (std::size_t d = 0; d < betti.size(); ++d)
    e = d % 2 == 0 ? checked::add(e, betti[d]) : checked::sub(e, betti[d]);
  return e;
}

namespace {

MuStalk unit_stalk() {
  MuStalk s;
  s.unit = true;
  s.betti = {1};
  return s;
}

// Elements 0..n-1 listed in a linear extension with 0 the bottom and n-1 the
// top. K is the nerve of (bottom, top], L the nerve of (bottom, top).
template <class Lt>
MuStalk stalk_of_interval(std::size_t n, Lt&& lt) {
  if (n == 1) return unit_stalk();
  SimplicialComplex k, l;
  add_chains(k, n - 1, [&](std::uint32_t a, std::uint32_t b) { return lt(a + 1, b + 1); });
  add_chains(l, n - 2, [&](std::uint32_t a, std::uint32_t b) { return lt(a + 1, b + 1); });
  MuStalk s;
  s.pair_cohomology = cohomology_from_homology(relative_homology(k, l));
  s.is_free = s.pair_cohomology.is_free();
  s.betti.assign(s.pair_cohomology.degrees.size() + 1, 0);
  for (std::size_t d = 0; d < s.pair_cohomology.degrees.size(); ++d)
    s.betti[d + 1] = s.pair_cohomology.degrees[d].betti;
  while (!s.betti.empty() && s.betti.back() == 0) s.betti.pop_back();
  return s;
}

struct ProductInterval {
  std::vector<std::vector<std::size_t>> factors;  // interval per coordinate
  std::size_t size = 1;
};

ProductInterval make_product(const ChainCatalog& cat, const std::vector<std::size_t>& w,
                             const std::vector<std::size_t>& x) {
  if (w.size() != x.size()) throw InputError("product interval needs matching supports");
  ProductInterval pi;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!cat.leq(w[i], x[i])) throw InputError("mu stalk needs w <= x");
    pi.factors.push_back(cat.interval(w[i], x[i], false, false));
    pi.size *= pi.factors.back().size();
  }
  return pi;
}

// Decodes a mixed-radix index (first coordinate most significant).
void decode(const ProductInterval& pi, std::size_t idx, std::vector<std::size_t>& out) {
  out.resize(pi.factors.size());
  for (std::size_t i = pi.factors.size(); i-- > 0;) {
    out[i] = pi.factors[i][idx % pi.factors[i].size()];
    idx /= pi.factors[i].size();
  }
}

}  // namespace

MuStalk mu_stalk(const ChainCatalog& cat, const std::vector<std::size_t>& w,
                 const std::vector<std::size_t>& x) {
  auto pi = make_product(cat, w, x);
  // Canonical catalog order is a linear extension of the chain order, so the
  // lexicographic order on tuples is a linear extension of the product order.
  std::vector<std::vector<std::size_t>> elems(pi.size);
  for (std::size_t i = 0; i < pi.size; ++i) decode(pi, i, elems[i]);
  return stalk_of_interval(pi.size, [&](std::uint32_t a, std::uint32_t b) {
    if (a == b) return false;
    for (std::size_t t = 0; t < elems[a].size(); ++t)
      if (!cat.leq(elems[a][t], elems[b][t])) return false;
    return true;
  });
}

MuStalk mu_stalk(const std::vector<Chain>& w, const std::vector<Chain>& x) {
  if (w.size() != x.size()) throw InputError("product interval needs matching supports");
  if (w.empty()) return unit_stalk();
  int len = 0;
  for (const auto& c : x) len = std::max(len, c.total_depth());
  ChainCatalog cat(x.front().depth().lattice_ptr(), len);
  std::vector<std::size_t> wi, xi;
  for (std::size_t i = 0; i < w.size(); ++i) {
    wi.push_back(cat.index_of(w[i]));
    xi.push_back(cat.index_of(x[i]));
  }
  return mu_stalk(cat, wi, xi);
}

MuStalk mu_stalk(const Chain& w, const Chain& x) { return mu_stalk(std::vector{w}, std::vector{x}); }

MuStalk tensor(const MuStalk& a, const MuStalk& b) {
  if (!a.is_free || !b.is_free)
    throw InvariantViolation("graded tensor of stalks with torsion needs Tor terms");
  if (a.unit) return b;
  if (b.unit) return a;
  MuStalk out;
  out.betti.assign(a.betti.size() + b.betti.size(), 0);
  for (std::size_t i = 0; i < a.betti.size(); ++i)
    for (std::size_t j = 0; j < b.betti.size(); ++j)
      out.betti[i + j] = checked::add(out.betti[i + j], checked::mul(a.betti[i], b.betti[j]));
  while (!out.betti.empty() && out.betti.back() == 0) out.betti.pop_back();
  out.pair_cohomology.degrees.clear();
  for (std::size_t d = 1; d < out.betti.size(); ++d)
    out.pair_cohomology.degrees.push_back({out.betti[d], {}});
  if (!out.betti.empty() && out.betti[0] != 0)
    throw InvariantViolation("non-unit stalk with a class in mu-degree 0");
  return out;
}

Poset product_interval(const ChainCatalog& cat, const std::vector<std::size_t>& w,
                       const std::vector<std::size_t>& x) {
  auto pi = make_product(cat, w, x);
  std::vector<std::vector<std::size_t>> elems(pi.size);
  std::vector<std::string> labels(pi.size);
  for (std::size_t i = 0; i < pi.size; ++i) {
    decode(pi, i, elems[i]);
    for (std::size_t t = 0; t < elems[i].size(); ++t) {
      if (t) labels[i] += '|';
      labels[i] += word_string(cat.at(elems[i][t]));
    }
  }
  return Poset(std::move(labels), [&](ElementId a, ElementId b) {
    for (std::size_t t = 0; t < elems[a].size(); ++t)
      if (!cat.leq(elems[a][t], elems[b][t])) return false;
    return true;
  });
}

EulerMobius euler_vs_mobius(const ChainCatalog& cat, const std::vector<std::size_t>& w,
                            const std::vector<std::size_t>& x) {
  EulerMobius r;
  r.euler = mu_stalk(cat, w, x).euler();
  auto p = product_interval(cat, w, x);
  r.mobius = mobius(p, 0, static_cast<ElementId>(p.size() - 1));
  r.equal = r.euler == r.mobius;
  return r;
}

EulerMobius euler_vs_mobius(const Chain& w, const Chain& x) {
  ChainCatalog cat(x.depth().lattice_ptr(), x.total_depth());
  return euler_vs_mobius(cat, {cat.index_of(w)}, {cat.index_of(x)});
}

SimplicialComplex crosscut_complex(const Poset& p) {
  const auto n = static_cast<ElementId>(p.size());
  if (n < 2) return {};
  const ElementId bottom = 0, top = n - 1;
  std::vector<ElementId> atoms;
  for (ElementId a = 1; a < n; ++a) {
    if (!p.lt(bottom, a)) continue;
    bool atom = true;
    for (ElementId z = 1; z < n && atom; ++z)
      if (z != a && p.lt(bottom, z) && p.lt(z, a)) atom = false;
    if (atom) atoms.push_back(a);
  }
  if (atoms.size() > 24) throw InputError("too many atoms for the crosscut complex");
  SimplicialComplex k;
  const std::uint32_t subsets = 1U << atoms.size();
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    // Join = least common upper bound; it exists because the interval is a lattice.
    std::optional<ElementId> join;
    for (ElementId z = 0; z < n; ++z) {
      bool upper = true;
      for (std::size_t i = 0; i < atoms.size() && upper; ++i)
        if ((mask >> i & 1U) && !p.leq(atoms[i], z)) upper = false;
      if (upper && (!join || p.leq(z, *join))) join = z;
    }
    if (!join) throw InputError("interval is not a lattice");
    if (*join == top) continue;
    Simplex s;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (mask >> i & 1U) s.push_back(static_cast<std::uint32_t>(i));
    k.add(s);
  }
  return k;
}

}  // namespace strata
