#include "strata/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "strata/errors.hpp"

namespace strata {

Poset::Poset(std::vector<std::string> labels,
             const std::function<bool(ElementId, ElementId)>& leq)
    : size_(labels.size()), labels_(std::move(labels)) {
  build(leq);
}

Poset::Poset(std::size_t size, const std::function<bool(ElementId, ElementId)>& leq)
    : size_(size) {
  labels_.reserve(size);
  for (std::size_t i = 0; i < size; ++i) labels_.push_back(std::to_string(i));
  build(leq);
}

void Poset::build(const std::function<bool(ElementId, ElementId)>& leq) {
  words_ = (size_ + 63) / 64;
  rows_.assign(size_ * words_, 0);
  for (ElementId a = 0; a < size_; ++a)
    for (ElementId b = 0; b < size_; ++b)
      if (leq(a, b)) rows_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64);

  for (ElementId a = 0; a < size_; ++a) {
    if (!this->leq(a, a)) throw InputError("relation is not reflexive at " + labels_[a]);
    for (ElementId b = a + 1; b < size_; ++b)
      if (this->leq(a, b) && this->leq(b, a))
        throw InputError("relation is not antisymmetric: " + labels_[a] + ", " + labels_[b]);
  }
  // Transitivity: the up-set of every b above a must sit inside the up-set of a.
  for (ElementId a = 0; a < size_; ++a) {
    const std::uint64_t* ra = &rows_[a * words_];
    for (ElementId b = 0; b < size_; ++b) {
      if (!this->leq(a, b)) continue;
      const std::uint64_t* rb = &rows_[b * words_];
      for (std::size_t w = 0; w < words_; ++w)
        if ((rb[w] & ~ra[w]) != 0)
          throw InputError("relation is not transitive through " + labels_[b]);
    }
  }
}

std::optional<ElementId> Poset::find(std::string_view label) const {
  for (ElementId a = 0; a < size_; ++a)
    if (labels_[a] == label) return a;
  return std::nullopt;
}

std::vector<ElementId> Poset::linear_extension() const {
  std::vector<std::size_t> down(size_, 0);
  for (ElementId a = 0; a < size_; ++a)
    for (ElementId b = 0; b < size_; ++b)
      if (leq(b, a)) ++down[a];
  std::vector<ElementId> out(size_);
  std::iota(out.begin(), out.end(), 0);
  std::stable_sort(out.begin(), out.end(),
                   [&](ElementId a, ElementId b) { return down[a] < down[b]; });
  return out;
}

std::vector<ElementId> Poset::maximal_elements() const {
  std::vector<ElementId> out;
  for (ElementId a = 0; a < size_; ++a) {
    bool top = true;
    for (ElementId b = 0; b < size_ && top; ++b) top = !lt(a, b);
    if (top) out.push_back(a);
  }
  return out;
}

std::vector<ElementId> Poset::minimal_elements() const {
  std::vector<ElementId> out;
  for (ElementId a = 0; a < size_; ++a) {
    bool bottom = true;
    for (ElementId b = 0; b < size_ && bottom; ++b) bottom = !lt(b, a);
    if (bottom) out.push_back(a);
  }
  return out;
}

std::optional<std::string> check_meet_table(std::size_t n, std::span<const ElementId> m,
                                            ElementId top) {
  if (m.size() != n * n) return "meet table has wrong size";
  if (top >= n) return "top index out of range";
  auto at = [&](ElementId a, ElementId b) { return m[a * n + b]; };
  for (ElementId a = 0; a < n; ++a) {
    if (at(a, a) != a) return "meet is not idempotent at " + std::to_string(a);
    if (at(a, top) != a) return "top is not a unit for meet at " + std::to_string(a);
    for (ElementId b = 0; b < n; ++b) {
      if (at(a, b) >= n) return "meet value out of range";
      if (at(a, b) != at(b, a))
        return "meet is not commutative at " + std::to_string(a) + "," + std::to_string(b);
    }
  }
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b)
      for (ElementId c = 0; c < n; ++c)
        if (at(at(a, b), c) != at(a, at(b, c)))
          return "meet is not associative at " + std::to_string(a) + "," + std::to_string(b) +
                 "," + std::to_string(c);
  return std::nullopt;
}

MeetSemilattice MeetSemilattice::from_meet_table(std::vector<std::string> labels,
                                                 std::vector<ElementId> meet_table,
                                                 ElementId top) {
  const std::size_t n = labels.size();
  if (auto err = check_meet_table(n, meet_table, top)) throw InputError(*err);
  MeetSemilattice L;
  L.order_ = Poset(std::move(labels),
                   [&](ElementId a, ElementId b) { return meet_table[a * n + b] == a; });
  L.meet_ = std::move(meet_table);
  L.top_ = top;
  L.finish();
  return L;
}

MeetSemilattice MeetSemilattice::from_order(Poset order) {
  const std::size_t n = order.size();
  auto tops = order.maximal_elements();
  if (tops.size() != 1) throw InputError("order has no unique top element");
  MeetSemilattice L;
  L.top_ = tops.front();
  L.meet_.assign(n * n, 0);
  for (ElementId a = 0; a < n; ++a) {
    for (ElementId b = 0; b < n; ++b) {
      std::optional<ElementId> glb;
      for (ElementId z = 0; z < n && !glb; ++z) {
        if (!order.leq(z, a) || !order.leq(z, b)) continue;
        bool greatest = true;
        for (ElementId y = 0; y < n && greatest; ++y)
          if (order.leq(y, a) && order.leq(y, b)) greatest = order.leq(y, z);
        if (greatest) glb = z;
      }
      if (!glb)
        throw InputError("no greatest lower bound for " + order.label(a) + ", " +
                         order.label(b));
      L.meet_[a * n + b] = *glb;
    }
  }
  L.order_ = std::move(order);
  if (auto err = check_meet_table(n, L.meet_, L.top_)) throw InvariantViolation(*err);
  L.finish();
  return L;
}

void MeetSemilattice::finish() {
  auto mins = order_.minimal_elements();
  if (mins.size() == 1) bottom_ = mins.front();
  proper_.clear();
  for (ElementId a = 0; a < size(); ++a)
    if (a != top_) proper_.push_back(a);
}

ElementId MeetSemilattice::find(std::string_view label) const {
  auto id = order_.find(label);
  if (!id) throw InputError("unknown element label '" + std::string(label) + "'");
  return *id;
}

BlowupPoset build_blowup_poset(int r, int v) {
  if (r < 1) throw InputError("blowup poset needs at least one line");
  if (v < 3) throw InputError("ambient dimension must be at least 3");
  const std::size_t n = static_cast<std::size_t>(r) + 2;
  const ElementId top = static_cast<ElementId>(r + 1);
  std::vector<std::string> labels{"0"};
  for (int i = 1; i <= r; ++i) labels.push_back("l" + std::to_string(i));
  labels.push_back("V");

  std::vector<ElementId> meet(n * n);
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b) {
      ElementId m;
      if (a == b || b == top) m = a;
      else if (a == top) m = b;
      else m = 0;
      meet[a * n + b] = m;
    }

  BlowupPoset out;
  out.lattice = std::make_shared<const MeetSemilattice>(
      MeetSemilattice::from_meet_table(std::move(labels), std::move(meet), top));
  out.lines = r;
  out.ambient_dim = v;
  out.gamma.assign(n, 2LL * (v - 1));
  out.gamma[0] = 2LL * v;
  out.gamma[top] = 0;
  out.rank.assign(n, 1);
  out.rank[0] = 2;
  out.rank[top] = 0;
  return out;
}

std::vector<long long> blowup_gamma_weights(const MeetSemilattice& L, int v) {
  if (v < 3) throw InputError("ambient dimension must be at least 3");
  auto bottom = L.bottom();
  if (!bottom || L.size() < 3) throw InputError("lattice is not of blowup shape");
  std::vector<long long> g(L.size(), 2LL * (v - 1));
  for (ElementId a : L.proper_elements()) {
    if (a == *bottom) continue;
    for (ElementId b : L.proper_elements())
      if (b != *bottom && a != b && L.leq(a, b))
        throw InputError("lattice is not of blowup shape");
  }
  g[*bottom] = 2LL * v;
  g[L.top()] = 0;
  return g;
}

std::vector<long long> rank_weights(const MeetSemilattice& L) {
  std::vector<long long> out(L.size());
  for (ElementId a = 0; a < L.size(); ++a)
    out[a] = static_cast<long long>(maximal_chain_length(L.order(), a, L.top()));
  return out;
}

namespace {

void require_leq(const Poset& p, ElementId lo, ElementId hi) {
  if (lo >= p.size() || hi >= p.size()) throw InputError("element index out of range");
  if (!p.leq(lo, hi)) throw InputError(p.label(lo) + " is not below " + p.label(hi));
}

}  // namespace

std::vector<ElementId> interval_elements(const Poset& p, ElementId lo, ElementId hi,
                                         bool open_lo, bool open_hi) {
  require_leq(p, lo, hi);
  std::vector<ElementId> out;
  for (ElementId z = 0; z < p.size(); ++z) {
    if (!p.leq(lo, z) || !p.leq(z, hi)) continue;
    if (open_lo && z == lo) continue;
    if (open_hi && z == hi) continue;
    out.push_back(z);
  }
  return out;
}

long long mobius(const Poset& p, ElementId lo, ElementId hi) {
  require_leq(p, lo, hi);
  auto elems = interval_elements(p, lo, hi, false, false);
  std::vector<std::size_t> below(p.size(), 0);
  for (ElementId a : elems)
    for (ElementId b : elems)
      if (p.leq(b, a)) ++below[a];
  std::stable_sort(elems.begin(), elems.end(),
                   [&](ElementId a, ElementId b) { return below[a] < below[b]; });

  std::vector<long long> mu(p.size(), 0);
  for (ElementId z : elems) {
    if (z == lo) {
      mu[z] = 1;
      continue;
    }
    long long s = 0;
    for (ElementId y : elems)
      if (y != z && p.leq(y, z)) s = checked::add(s, mu[y]);
    mu[z] = -s;
  }
  return mu[hi];
}

std::size_t maximal_chain_length(const Poset& p, ElementId lo, ElementId hi) {
  require_leq(p, lo, hi);
  auto elems = interval_elements(p, lo, hi, false, false);
  std::vector<std::size_t> below(p.size(), 0);
  for (ElementId a : elems)
    for (ElementId b : elems)
      if (p.leq(b, a)) ++below[a];
  std::stable_sort(elems.begin(), elems.end(),
                   [&](ElementId a, ElementId b) { return below[a] < below[b]; });
  std::vector<std::size_t> len(p.size(), 0);
  for (ElementId z : elems)
    for (ElementId y : elems)
      if (p.lt(y, z)) len[z] = std::max(len[z], len[y] + 1);
  return len[hi];
}

Poset boolean_lattice(int atoms) {
  if (atoms < 0 || atoms > 16) throw InputError("boolean lattice size out of range");
  const std::size_t n = std::size_t{1} << atoms;
  std::vector<std::string> labels;
  for (std::size_t s = 0; s < n; ++s) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int i = 0; i < atoms; ++i)
      if (s >> i & 1U) {
        if (!first) os << ',';
        os << i;
        first = false;
      }
    os << '}';
    labels.push_back(os.str());
  }
  return Poset(std::move(labels), [](ElementId a, ElementId b) { return (a & ~b) == 0; });
}

}  // namespace strata
