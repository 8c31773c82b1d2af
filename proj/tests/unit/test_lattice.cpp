#include <bit>

#include "doctest.h"
#include "strata/errors.hpp"
#include "strata/lattice.hpp"

using namespace strata;

namespace {

int number_theoretic_mobius(int n) {
  int r = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    r = -r;
  }
  return n > 1 ? -r : r;
}

}  // namespace

TEST_CASE("poset rejects a relation that is not a partial order") {
  CHECK_THROWS_AS(Poset(2, [](ElementId, ElementId) { return true; }), InputError);
  CHECK_THROWS_AS(Poset(2, [](ElementId a, ElementId b) { return a != b; }), InputError);
}

TEST_CASE("boolean lattice moebius is (-1)^|T \\ S|") {
  for (int n = 1; n <= 4; ++n) {
    Poset b = boolean_lattice(n);
    for (ElementId s = 0; s < b.size(); ++s)
      for (ElementId t = 0; t < b.size(); ++t) {
        if ((s & ~t) != 0) {
          CHECK_FALSE(b.leq(s, t));
          continue;
        }
        int k = std::popcount(t & ~s);
        CHECK(mobius(b, s, t) == (k % 2 ? -1 : 1));
        CHECK(maximal_chain_length(b, s, t) == static_cast<std::size_t>(k));
      }
  }
}

TEST_CASE("divisor lattice moebius matches the arithmetic one") {
  const int N = 360;
  std::vector<int> divs;
  for (int d = 1; d <= N; ++d)
    if (N % d == 0) divs.push_back(d);
  Poset p(divs.size(), [&](ElementId a, ElementId b) { return divs[b] % divs[a] == 0; });
  for (ElementId a = 0; a < p.size(); ++a)
    for (ElementId b = 0; b < p.size(); ++b)
      if (p.leq(a, b)) CHECK(mobius(p, a, b) == number_theoretic_mobius(divs[b] / divs[a]));
}

TEST_CASE("linear extension respects the order") {
  Poset b = boolean_lattice(3);
  auto ext = b.linear_extension();
  REQUIRE(ext.size() == 8);
  for (std::size_t i = 0; i < ext.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(b.lt(ext[i], ext[j]));
  CHECK(b.minimal_elements() == std::vector<ElementId>{0});
  CHECK(b.maximal_elements() == std::vector<ElementId>{7});
}

TEST_CASE("meet table check flags broken tables") {
  // chain 0 < 1 < 2
  std::vector<ElementId> good{0, 0, 0, 0, 1, 1, 0, 1, 2};
  CHECK_FALSE(check_meet_table(3, good, 2).has_value());
  auto bad = good;
  bad[1] = 1;  // meet(0,1) != meet(1,0)
  CHECK(check_meet_table(3, bad, 2).has_value());
  auto badtop = good;
  CHECK(check_meet_table(3, badtop, 1).has_value());
}

TEST_CASE("from_order requires meets") {
  // two incomparable minimal elements under a top: no meet
  Poset p(3, [](ElementId a, ElementId b) { return a == b || b == 2; });
  CHECK_THROWS_AS(MeetSemilattice::from_order(p), InputError);
}

TEST_CASE("blowup poset shape and weights") {
  for (int r = 1; r <= 4; ++r)
    for (int v = 3; v <= 5; ++v) {
      auto Q = build_blowup_poset(r, v);
      const auto& L = *Q.lattice;
      REQUIRE(L.size() == static_cast<std::size_t>(r + 2));
      CHECK(L.top() == Q.whole());
      for (int i = 1; i <= r; ++i) {
        CHECK(L.leq(Q.zero(), Q.line(i)));
        CHECK(Q.gamma[Q.line(i)] == 2 * (v - 1));
        CHECK(Q.rank[Q.line(i)] == 1);
        for (int j = 1; j <= r; ++j)
          if (i != j) CHECK(L.meet(Q.line(i), Q.line(j)) == Q.zero());
      }
      CHECK(Q.gamma[Q.zero()] == 2 * v);
      CHECK(Q.rank[Q.zero()] == 2);
      CHECK(Q.gamma[Q.whole()] == 0);
      CHECK(blowup_gamma_weights(L, v) == Q.gamma);
      CHECK(rank_weights(L) == Q.rank);
      // mobius(0, V) = r - 1 on a rank-two lattice with r atoms
      CHECK(mobius(L.order(), Q.zero(), Q.whole()) == r - 1);
    }
  CHECK_THROWS_AS(build_blowup_poset(0, 3), InputError);
  CHECK_THROWS_AS(build_blowup_poset(2, 2), InputError);
}

TEST_CASE("blowup weights reject other shapes") {
  auto B = MeetSemilattice::from_order(boolean_lattice(3));
  CHECK_THROWS_AS(blowup_gamma_weights(B, 3), InputError);
}
