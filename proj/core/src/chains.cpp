#include "strata/chains.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "strata/errors.hpp"

namespace strata {

DepthFunction::DepthFunction(LatticePtr lattice)
    : lattice_(std::move(lattice)), depths_(lattice_->size(), 0) {}

DepthFunction::DepthFunction(LatticePtr lattice, std::vector<int> depths)
    : lattice_(std::move(lattice)), depths_(std::move(depths)) {
  const auto& L = *lattice_;
  if (depths_.size() != L.size()) throw InputError("depth vector has wrong size");
  if (depths_[L.top()] != 0) throw InputError("depth at the top element must be 0");
  for (int d : depths_)
    if (d < 0) throw InputError("depths must be nonnegative");
  for (ElementId p : L.proper_elements())
    for (ElementId q : L.proper_elements())
      if (L.leq(p, q) && depths_[p] > depths_[q])
        throw InputError("depth function is not order compatible at " + L.label(p) + " <= " +
                         L.label(q));
}

DepthFunction DepthFunction::from_labels(
    LatticePtr lattice, const std::vector<std::pair<std::string, int>>& depths) {
  std::vector<int> d(lattice->size(), 0);
  for (const auto& [label, value] : depths) d[lattice->find(label)] = value;
  return DepthFunction(std::move(lattice), std::move(d));
}

DepthFunction unchecked_depths(LatticePtr lattice, std::vector<int> depths) {
  DepthFunction g;
  g.lattice_ = std::move(lattice);
  g.depths_ = std::move(depths);
  return g;
}

bool DepthFunction::is_trivial() const {
  return std::all_of(depths_.begin(), depths_.end(), [](int d) { return d == 0; });
}

int DepthFunction::max_depth() const {
  return depths_.empty() ? 0 : *std::max_element(depths_.begin(), depths_.end());
}

bool DepthFunction::is_meet_preserving() const {
  const auto& L = *lattice_;
  for (ElementId p : L.proper_elements())
    for (ElementId q : L.proper_elements())
      if (depths_[L.meet(p, q)] != std::min(depths_[p], depths_[q])) return false;
  return true;
}

namespace {

void require_same(const DepthFunction& a, const DepthFunction& b) {
  if (a.lattice_ptr() != b.lattice_ptr() && a.size() != b.size())
    throw InputError("depth functions live on different lattices");
}

}  // namespace

bool pointwise_leq(const DepthFunction& a, const DepthFunction& b) {
  require_same(a, b);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[static_cast<ElementId>(i)] > b[static_cast<ElementId>(i)]) return false;
  return true;
}

DepthFunction pointwise_max(const DepthFunction& a, const DepthFunction& b) {
  require_same(a, b);
  std::vector<int> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = std::max(a.depths()[i], b.depths()[i]);
  return unchecked_depths(a.lattice_ptr(), std::move(d));
}

DepthFunction pointwise_sum(const DepthFunction& a, const DepthFunction& b) {
  require_same(a, b);
  std::vector<int> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (__builtin_add_overflow(a.depths()[i], b.depths()[i], &d[i]))
      throw OverflowError("depth overflow");
  }
  return unchecked_depths(a.lattice_ptr(), std::move(d));
}

bool canonical_less(const DepthFunction& a, const DepthFunction& b) {
  int ma = a.max_depth(), mb = b.max_depth();
  if (ma != mb) return ma < mb;
  return a.depths() < b.depths();
}

Chain::Chain(DepthFunction g) : g_(std::move(g)) {
  if (!g_.is_meet_preserving()) throw InputError("depth function is not saturated");
}

Chain Chain::trivial(LatticePtr lattice) {
  return Chain(DepthFunction(std::move(lattice)), Trusted{});
}

Chain saturate(const DepthFunction& g) {
  const auto& L = g.lattice();
  const auto& proper = L.proper_elements();
  std::vector<int> d = g.depths();
  bool changed = true;
  while (changed) {
    changed = false;
    for (ElementId p : proper)
      for (ElementId q : proper) {
        ElementId m = L.meet(p, q);
        int v = std::min(d[p], d[q]);
        if (d[m] < v) {
          d[m] = v;
          changed = true;
        }
      }
    for (ElementId p : proper)
      for (ElementId q : proper)
        if (L.leq(p, q) && d[q] < d[p]) {
          d[q] = d[p];
          changed = true;
        }
  }
  return Chain(unchecked_depths(g.lattice_ptr(), std::move(d)), Chain::Trusted{});
}

std::vector<ElementId> Chain::sequence() const {
  const auto& L = lattice();
  const int len = total_depth();
  std::vector<ElementId> seq;
  seq.reserve(static_cast<std::size_t>(len));
  for (int n = 1; n <= len; ++n) {
    ElementId inf = L.top();
    for (ElementId q : L.proper_elements())
      if (g_[q] >= n) inf = L.meet(inf, q);
    seq.push_back(inf);
  }
  return seq;
}

std::vector<Letter> Chain::word() const {
  auto seq = sequence();
  std::vector<Letter> out;
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
    if (!out.empty() && out.back().element == *it) ++out.back().count;
    else out.push_back({*it, 1});
  }
  return out;
}

std::vector<Letter> chain_to_word(const DepthFunction& g) { return Chain(g).word(); }

Chain chain_from_sequence(LatticePtr lattice, const std::vector<ElementId>& seq) {
  const auto& L = *lattice;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    if (seq[n] >= L.size() || seq[n] == L.top())
      throw InputError("word letters must be non-top elements");
    if (n > 0 && !L.leq(seq[n - 1], seq[n]))
      throw InputError("word letters " + L.label(seq[n - 1]) + " and " + L.label(seq[n]) +
                       " do not form a chain");
  }
  std::vector<int> d(L.size(), 0);
  for (ElementId q : L.proper_elements())
    for (ElementId f : seq)
      if (L.leq(f, q)) ++d[q];
  return Chain(unchecked_depths(std::move(lattice), std::move(d)), Chain::Trusted{});
}

Chain chain_from_word(LatticePtr lattice, const std::vector<Letter>& word) {
  std::vector<ElementId> seq;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (it->count < 0) throw InputError("negative letter count");
    seq.insert(seq.end(), static_cast<std::size_t>(it->count), it->element);
  }
  return chain_from_sequence(std::move(lattice), seq);
}

std::string word_string(const Chain& c) {
  auto w = c.word();
  if (w.empty()) return "triv";
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += '+';
    out += std::to_string(l.count) + "*" + c.lattice().label(l.element);
  }
  return out;
}

Chain parse_word(LatticePtr lattice, std::string_view text) {
  if (text == "triv" || text.empty()) return Chain::trivial(std::move(lattice));
  std::vector<Letter> word;
  while (!text.empty()) {
    auto plus = text.find('+');
    std::string_view term = text.substr(0, plus);
    text = plus == std::string_view::npos ? std::string_view{} : text.substr(plus + 1);
    int count = 1;
    auto star = term.find('*');
    if (star != std::string_view::npos) {
      auto digits = term.substr(0, star);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), count);
      if (ec != std::errc{} || ptr != digits.data() + digits.size() || count < 0)
        throw InputError("bad letter count in '" + std::string(term) + "'");
      term = term.substr(star + 1);
    }
    word.push_back({lattice->find(term), count});
  }
  // Letters are written highest first; accept any order by sorting on the
  // order relation, which is total along a valid word.
  const auto& L = *lattice;
  std::stable_sort(word.begin(), word.end(), [&](const Letter& a, const Letter& b) {
    return L.order().lt(b.element, a.element);
  });
  return chain_from_word(std::move(lattice), word);
}

bool chain_leq(const Chain& a, const Chain& b) { return pointwise_leq(a.depth(), b.depth()); }

Chain chain_join(const Chain& a, const Chain& b) {
  return saturate(pointwise_max(a.depth(), b.depth()));
}

std::vector<Chain> enumerate_chains(const LatticePtr& lattice, int max_len) {
  if (max_len < 0) throw InputError("maximum chain length must be nonnegative");
  const auto& L = *lattice;
  std::vector<Chain> out;
  std::vector<ElementId> seq;
  auto rec = [&](auto&& self) -> void {
    out.push_back(chain_from_sequence(lattice, seq));
    if (static_cast<int>(seq.size()) == max_len) return;
    for (ElementId q : L.proper_elements()) {
      if (!seq.empty() && !L.leq(seq.back(), q)) continue;
      seq.push_back(q);
      self(self);
      seq.pop_back();
    }
  };
  rec(rec);
  std::sort(out.begin(), out.end(),
            [](const Chain& a, const Chain& b) { return canonical_less(a.depth(), b.depth()); });
  return out;
}

std::vector<Chain> covers_above(const Chain& c, int budget) {
  if (budget < c.total_depth())
    throw InputError("depth budget is smaller than the total depth of the chain");
  auto all = enumerate_chains(c.depth().lattice_ptr(), budget);
  std::vector<Chain> above;
  for (auto& x : all)
    if (!(x == c) && chain_leq(c, x)) above.push_back(std::move(x));
  std::vector<Chain> out;
  for (const auto& x : above) {
    bool minimal = true;
    for (const auto& y : above)
      if (!(y == x) && chain_leq(y, x)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(x);
  }
  return out;
}

std::vector<EssentialJoin> essential_above(const Chain& c, int budget) {
  auto covers = covers_above(c, budget);
  const std::size_t k = covers.size();
  if (k > 20) throw InputError("too many covers to enumerate joins");
  std::map<std::vector<int>, std::size_t> seen;
  std::vector<EssentialJoin> out;
  // Subsets by size, then lexicographically, so the stored witness is the
  // first one in that order.
  std::vector<std::size_t> pick;
  for (std::size_t size = 1; size <= k; ++size) {
    pick.resize(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      Chain j = covers[pick[0]];
      for (std::size_t i = 1; i < size; ++i) j = chain_join(j, covers[pick[i]]);
      if (seen.emplace(j.depth().depths(), out.size()).second) {
        EssentialJoin e{j, {}};
        for (std::size_t i : pick) e.witness.push_back(covers[i]);
        out.push_back(std::move(e));
      }
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == k - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t t = i; t < size; ++t) pick[t] = pick[t - 1] + 1;
    }
  }
  std::sort(out.begin(), out.end(), [](const EssentialJoin& a, const EssentialJoin& b) {
    return canonical_less(a.join.depth(), b.join.depth());
  });
  return out;
}

bool is_essential_pair(const Chain& w, const Chain& x) {
  if (!chain_leq(w, x)) throw InputError("essential pair needs w <= x");
  if (w == x) return true;
  Chain j = w;
  for (const auto& s : covers_above(w, x.total_depth()))
    if (chain_leq(s, x)) j = chain_join(j, s);
  return j == x;
}

std::size_t DepthHash::operator()(const std::vector<int>& v) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (int x : v) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

ChainCatalog::ChainCatalog(LatticePtr lattice, int max_len)
    : lattice_(std::move(lattice)), max_len_(max_len) {
  chains_ = enumerate_chains(lattice_, max_len_);
  const std::size_t n = chains_.size();
  for (std::size_t i = 0; i < n; ++i) index_.emplace(chains_[i].depth().depths(), i);
  words_ = (n + 63) / 64;
  leq_.assign(n * words_, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (chain_leq(chains_[a], chains_[b]))
        leq_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
  up_covers_.resize(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!lt(a, b)) continue;
      bool cover = true;
      for (std::size_t c = 0; c < n && cover; ++c)
        if (lt(a, c) && lt(c, b)) cover = false;
      if (cover) up_covers_[a].push_back(b);
    }
}

std::optional<std::size_t> ChainCatalog::index_of(const DepthFunction& g) const {
  auto it = index_.find(g.depths());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ChainCatalog::index_of(const Chain& c) const {
  auto i = index_of(c.depth());
  if (!i) throw InputError("chain " + word_string(c) + " is outside the catalog");
  return *i;
}

std::size_t ChainCatalog::join(std::size_t a, std::size_t b) const {
  if (leq(a, b)) return b;
  if (leq(b, a)) return a;
  return index_of(chain_join(chains_[a], chains_[b]));
}

std::size_t ChainCatalog::cover_join_below(std::size_t w, std::size_t x) const {
  std::size_t j = w;
  for (std::size_t s : up_covers_[w])
    if (leq(s, x)) j = join(j, s);
  return j;
}

std::vector<std::size_t> ChainCatalog::interval(std::size_t lo, std::size_t hi, bool open_lo,
                                                bool open_hi) const {
  if (!leq(lo, hi)) throw InputError("interval needs lo <= hi");
  std::vector<std::size_t> out;
  for (std::size_t z = 0; z < size(); ++z) {
    if (!leq(lo, z) || !leq(z, hi)) continue;
    if ((open_lo && z == lo) || (open_hi && z == hi)) continue;
    out.push_back(z);
  }
  return out;
}

}  // namespace strata
