#include <set>

#include "doctest.h"
#include "strata/delpezzo.hpp"
#include "strata/errors.hpp"

using namespace strata;

namespace {

// d' = 2d - n_i - n_j - n_k, n_i' = d - n_j - n_k, ...
DPClass quadratic(const DPClass& a, int i, int j, int k) {
  DPClass b = a;
  auto n = [&](int t) { return a.n[static_cast<std::size_t>(t - 1)]; };
  b.d = 2 * a.d - n(i) - n(j) - n(k);
  b.n[static_cast<std::size_t>(i - 1)] = a.d - n(j) - n(k);
  b.n[static_cast<std::size_t>(j - 1)] = a.d - n(i) - n(k);
  b.n[static_cast<std::size_t>(k - 1)] = a.d - n(i) - n(j);
  return b;
}

}  // namespace

TEST_CASE("lattice basics") {
  auto K = dp_anticanonical();
  CHECK(K == DPClass{3, {1, 1, 1, 1}});
  CHECK(dp_pairing(K, K) == 5);
  auto curves = dp_minus_one_curves();
  CHECK(curves.size() == 10);
  for (const auto& e : curves) {
    CHECK(dp_pairing(e, e) == -1);
    CHECK(dp_pairing(K, e) == 1);
  }
  CHECK(dp_is_ample(K));
  CHECK_FALSE(dp_is_ample(DPClass{2, {1, 1, 1, 1}}));
  CHECK(dp_string(K) == "(3;1,1,1,1)");
  CHECK(parse_dp_class("3,1,1,1,1") == K);
  CHECK_THROWS_AS(parse_dp_class("3,1,1"), InputError);
  CHECK_THROWS_AS(parse_dp_class("3,a,1,1,1"), InputError);
}

TEST_CASE("cremona matches the quadratic transformation") {
  for (const auto& a : random_ample_classes(7, 200)) {
    CHECK(cremona(a, {1, 2, 3}) == quadratic(a, 1, 2, 3));
    CHECK(cremona(a, {2, 3, 4}) == quadratic(a, 2, 3, 4));
    CHECK(transpose(transpose(a, 1, 3), 1, 3) == a);
  }
  CHECK_THROWS_AS(cremona(DPClass{}, {1, 1, 2}), InputError);
}

TEST_CASE("weyl group is S5 acting freely on a generic orbit") {
  const auto& G = weyl_group();
  CHECK(G.size() == 120);
  CHECK(G.front().word_string() == "e");
  DPClass generic{50, {1, 3, 7, 12}};
  std::set<std::array<long long, 5>> orbit;
  for (const auto& g : G) {
    auto b = g.apply(generic);
    orbit.insert({b.d, b.n[0], b.n[1], b.n[2], b.n[3]});
    // the word and the matrix agree
    DPClass w = generic;
    for (int s : g.word) w = apply_generator(w, s);
    CHECK(w == b);
  }
  CHECK(orbit.size() == 120);
  for (std::size_t i = 1; i < G.size(); ++i) CHECK(G[i - 1].word.size() <= G[i].word.size());
}

TEST_CASE("normalization") {
  auto n = dp_normalize(DPClass{8, {4, 3, 2, 1}});
  const auto& u = n.cls;
  CHECK(u.n[0] + u.n[1] + u.n[3] <= u.d);
  CHECK(u.n[0] >= u.n[1]);
  CHECK_THROWS_AS(dp_normalize(DPClass{1, {1, 1, 0, 0}}), InputError);
  auto first = random_ample_classes(11, 50);
  CHECK(first == random_ample_classes(11, 50));
  for (const auto& a : first) CHECK(dp_is_ample(a));
}

TEST_CASE("n_alpha examples") {
  auto K = n_alpha(dp_anticanonical());
  // M = 3 - 4 + 1 on every element of the orbit
  CHECK(K.N == 0);
  auto a = n_alpha(DPClass{8, {4, 3, 2, 1}});
  CHECK(a.feasible);
  CHECK(a.N == 1);
}
