#include "doctest.h"
#include "strata/divisors.hpp"
#include "strata/errors.hpp"

using namespace strata;

TEST_CASE("single-point weights") {
  auto Q = build_blowup_poset(3, 3);
  LabeledConfiguration x(Q.lattice);
  x.set("p", parse_word(Q.lattice, "1*0").depth());
  CHECK(rank_of(x) == 2);
  CHECK(gamma_of(x, 3) == 6);
  CHECK(supp_of(x) == 1);
  x.set("q", parse_word(Q.lattice, "2*l2").depth());
  CHECK(rank_of(x) == 4);
  CHECK(gamma_of(x, 3) == 6 + 8);
  CHECK(supp_of(x) == 2);
  CHECK(multiplicity(x, Q.line(2)) == 2);
  CHECK(multiplicity(x, Q.zero()) == 1);
  CHECK_THROWS_AS(multiplicity(x, Q.whole()), InputError);
  x.set("q", DepthFunction(Q.lattice));
  CHECK(x.support() == 1);
}

TEST_CASE("extension reads the saturated word") {
  auto Q = build_blowup_poset(2, 4);
  LabeledConfiguration x(Q.lattice);
  // l1 and l2 both at depth one saturate to a single letter 0
  x.set("p", DepthFunction(Q.lattice, {0, 1, 1, 0}));
  CHECK(gamma_of(x, 4) == 8);
  CHECK(rank_of(x) == 2);
  CHECK(multiplicity(x, Q.zero()) == 1);
  CHECK(multiplicity(x, Q.line(1)) == 0);
  CHECK_THROWS_AS(extend_function({1, 2}, x), InputError);
  CHECK_THROWS_AS(extend_function({1, 1, 1, 1}, x), InputError);
}

TEST_CASE("relative values are differences") {
  auto Q = build_blowup_poset(2, 3);
  LabeledConfiguration lo(Q.lattice), up(Q.lattice);
  lo.set("p", parse_word(Q.lattice, "1*l1").depth());
  up.set("p", parse_word(Q.lattice, "1*l1+1*0").depth());
  up.set("q", parse_word(Q.lattice, "1*l2").depth());
  RelativePair pr(lo, up);
  CHECK(gamma_of(pr, 3) == gamma_of(up, 3) - gamma_of(lo, 3));
  CHECK(rank_of(pr) == 3);
  CHECK(supp_of(pr) == 2);
  // 1*l1 < 1*0 as a relative pair: +1 on 0, -1 on l1
  LabeledConfiguration a(Q.lattice), b(Q.lattice);
  a.set("p", parse_word(Q.lattice, "1*l1").depth());
  b.set("p", parse_word(Q.lattice, "1*0").depth());
  RelativePair neg(a, b);
  CHECK(multiplicity(neg, Q.zero()) == 1);
  CHECK(multiplicity(neg, Q.line(1)) == -1);
  CHECK_THROWS_AS(RelativePair(b, a), InputError);
}

TEST_CASE("basepoint slot") {
  auto Q = build_blowup_poset(2, 3);
  LabeledConfiguration x(Q.lattice);
  x.set_basepoint(DepthFunction(Q.lattice));
  CHECK(x.pointed());
  x.set_basepoint(parse_word(Q.lattice, "1*l1").depth());
  CHECK(supp_of(x) == 0);
  CHECK(rank_of(x) == 1);
  LabeledConfiguration y(Q.lattice);
  CHECK_THROWS_AS(RelativePair(y, x), InputError);
}
