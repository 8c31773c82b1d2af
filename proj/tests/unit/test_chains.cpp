#include <functional>

#include "doctest.h"
#include "strata/chains.hpp"
#include "strata/errors.hpp"

using namespace strata;

namespace {

// All order-compatible depth functions with values <= m.
std::vector<std::vector<int>> all_depths(const MeetSemilattice& L, int m) {
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

}  // namespace

TEST_CASE("depth function validation") {
  auto L = build_blowup_poset(2, 3).lattice;
  CHECK_NOTHROW(DepthFunction(L, {1, 2, 1, 0}));
  CHECK_THROWS_AS(DepthFunction(L, {2, 1, 1, 0}), InputError);  // 0 <= l1 violated
  CHECK_THROWS_AS(DepthFunction(L, {0, 0, 0, 1}), InputError);  // top nonzero
  CHECK_THROWS_AS(DepthFunction(L, {0, 0, 0}), InputError);
  CHECK_THROWS_AS(DepthFunction(L, {-1, 0, 0, 0}), InputError);
}

TEST_CASE("saturate is the least meet-preserving function above g") {
  for (int r = 1; r <= 3; ++r) {
    auto L = build_blowup_poset(r, 3).lattice;
    auto all = all_depths(*L, 3);
    std::vector<std::vector<int>> mp;
    for (const auto& d : all)
      if (meet_preserving(*L, d)) mp.push_back(d);
    for (const auto& d : all) {
      // oracle: the pointwise minimum of every meet-preserving h >= g is itself one
      std::vector<int> best(d.size(), 1 << 20);
      best.back() = 0;
      for (const auto& h : mp)
        if (below(d, h))
          for (std::size_t i = 0; i < d.size(); ++i) best[i] = std::min(best[i], h[i]);
      auto s = saturate(DepthFunction(L, d));
      if (best[0] < (1 << 20)) CHECK(s.depth().depths() == best);
      CHECK(s.depth().is_meet_preserving());
    }
  }
}

TEST_CASE("chain counts on Q_r") {
  // words a*l_i + b*0 of length k: one with a = 0, r*k otherwise
  for (int r = 1; r <= 4; ++r)
    for (int n = 0; n <= 4; ++n) {
      std::size_t expect = 1;
      for (int k = 1; k <= n; ++k) expect += 1 + static_cast<std::size_t>(r * k);
      CHECK(enumerate_chains(build_blowup_poset(r, 3).lattice, n).size() == expect);
    }
}

TEST_CASE("words round trip and render") {
  auto L = build_blowup_poset(3, 3).lattice;
  CHECK(word_string(Chain::trivial(L)) == "triv");
  for (const auto& c : enumerate_chains(L, 4)) {
    CHECK(parse_word(L, word_string(c)) == c);
    CHECK(chain_from_word(L, c.word()) == c);
    CHECK(chain_from_sequence(L, c.sequence()) == c);
    CHECK(static_cast<int>(c.sequence().size()) == c.total_depth());
  }
  auto c = parse_word(L, "2*l1+1*0");
  // g(q) counts the letters at or below q
  CHECK(c[0] == 1);
  CHECK(c[1] == 3);
  CHECK(c[2] == 1);
  CHECK(word_string(parse_word(L, "l2")) == "1*l2");
  CHECK_THROWS_AS(parse_word(L, "1*l1+1*l2"), InputError);
  CHECK_THROWS_AS(parse_word(L, "1*l9"), InputError);
  CHECK_THROWS_AS(chain_from_sequence(L, {1, 2}), InputError);
  CHECK_THROWS_AS(Chain(DepthFunction(L, {1, 1, 1, 0, 0})), InputError);
}

TEST_CASE("essential joins above a line multiple") {
  auto L = build_blowup_poset(2, 3).lattice;
  auto w = parse_word(L, "2*l1");
  std::vector<std::string> got;
  for (const auto& e : essential_above(w, 10)) {
    got.push_back(word_string(e.join));
    // witness joins back to the join
    Chain j = e.witness.front();
    for (const auto& c : e.witness) j = chain_join(j, c);
    CHECK(j == e.join);
  }
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<std::string>{"1*l1+1*0", "2*l1+1*0", "3*l1"});
  CHECK(is_essential_pair(w, w));
  CHECK_FALSE(is_essential_pair(w, parse_word(L, "4*l1")));
  CHECK_THROWS_AS(is_essential_pair(w, Chain::trivial(L)), InputError);
}

TEST_CASE("catalog agrees with the direct chain operations") {
  auto L = build_blowup_poset(2, 3).lattice;
  ChainCatalog cat(L, 3);
  CHECK(cat.at(0).is_trivial());
  for (std::size_t a = 0; a < cat.size(); ++a) {
    CHECK(cat.index_of(cat.at(a)) == a);
    for (std::size_t b = 0; b < cat.size(); ++b) {
      CHECK(cat.leq(a, b) == chain_leq(cat.at(a), cat.at(b)));
      Chain j = chain_join(cat.at(a), cat.at(b));
      if (j.total_depth() <= 3) CHECK(cat.at(cat.join(a, b)) == j);
      if (cat.leq(a, b) && cat.at(b).total_depth() <= 3)
        CHECK(cat.is_essential_pair(a, b) == is_essential_pair(cat.at(a), cat.at(b)));
    }
    // covers: strictly above with nothing between
    for (std::size_t b = 0; b < cat.size(); ++b) {
      bool cover = cat.lt(a, b);
      for (std::size_t c = 0; c < cat.size() && cover; ++c) cover = !(cat.lt(a, c) && cat.lt(c, b));
      bool listed = std::find(cat.covers_above(a).begin(), cat.covers_above(a).end(), b) !=
                    cat.covers_above(a).end();
      CHECK(cover == listed);
    }
  }
}
