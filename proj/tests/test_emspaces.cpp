#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bazext/emspaces.hpp"

using namespace bzx;

TEST_CASE("km_generators for K(Z,5)") {
  auto gens = km_generators(5, 15);
  // degree 5: l5 (empty word)
  int count5 = 0, count7 = 0, count8 = 0;
  for (const auto& w : gens) {
    int d = 5 + word_degree(2, w);
    if (d == 5) {
      ++count5;
      CHECK(w.empty());
    }
    if (d == 7) {
      ++count7;
      CHECK(w == Word{2});
    }
    if (d == 8) {
      ++count8;
      CHECK(w == Word{3});
    }
  }
  CHECK(count5 == 1);
  CHECK(count7 == 1);  // Sq2 l5, the unique degree-7 class
  CHECK(count8 == 1);  // Sq3 l5
}

TEST_CASE("product basis dimensions for K(Z,5) x CP^2") {
  ProductSpace sp(5, 2, 15);
  CHECK(sp.dim(7) == 2);   // Sq2 l5, x.l5
  CHECK(sp.dim(9) == 3);   // Sq4 l5, x.Sq2 l5, x^2.l5
  CHECK(sp.dim(0) == 1);
  CHECK(sp.dim(1) == 0);
  // CP^2 alone: degree 6 empty (x^3 = 0)
  ProductSpace cp2(0, 2, 10);
  CHECK(cp2.dim(6) == 0);
  CHECK(cp2.dim(4) == 1);
  ProductSpace cpinf(0, -1, 10);
  CHECK(cpinf.dim(6) == 1);
}

TEST_CASE("instability: Sq^|c| c = c^2") {
  ProductSpace sp(5, 2, 24);
  // Sq5 l5 = l5^2
  Vec l5 = sp.class_of(EmMono{{Word{}}, 0});
  Vec sq5 = sp.sq(5, 5, l5);
  Vec l5sq = sp.mul(5, l5, 5, l5);
  CHECK(sq5 == l5sq);
  // Sq2 x = x^2
  Vec x = sp.class_of(EmMono{{}, 1});
  CHECK(sp.sq(2, 2, x) == sp.mul(2, x, 2, x));
  CHECK(sp.sq(1, 2, x) == Vec(sp.dim(3), 0));
  // exhaustive over monomials of degree <= 12
  for (int d = 1; d <= 12; ++d)
    for (std::size_t i = 0; i < sp.dim(d); ++i) {
      Vec c = sp.class_of(sp.basis(d)[i]);
      CHECK(sp.sq(d, d, c) == sp.mul(d, c, d, c));
    }
}

TEST_CASE("Sq2 Sq2 l5 = Sq3 Sq1 l5 = 0 in K(Z,5)") {
  ProductSpace sp(5, 2, 15);
  Vec l5 = sp.class_of(EmMono{{Word{}}, 0});
  Vec v = sp.sq(2, 5, l5);  // Sq2 l5
  v = sp.sq(2, 7, v);       // Sq2 Sq2 l5
  for (uint8_t c : v) CHECK(c == 0);
}

TEST_CASE("unstable action respects the Adem relations as operators") {
  ProductSpace sp(5, 2, 24);
  std::mt19937 rng(41);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 120; ++trial) {
    int k1 = 1 + int(rng() % 5), k2 = 1 + int(rng() % 5);
    int d = 2 + int(rng() % 12);
    if (d > 15 || sp.dim(d) == 0) continue;
    if (d + k1 + k2 > 24) continue;
    std::size_t i = rng() % sp.dim(d);
    Vec c = sp.class_of(sp.basis(d)[i]);
    Vec lhs = sp.act_element(adem_normalize(2, {k1, k2}), k1 + k2, d, c);
    Vec rhs = sp.sq(k1, d + k2, sp.sq(k2, d, c));
    CHECK(lhs == rhs);
    ++checked;
  }
  CHECK(checked >= 100);
}

TEST_CASE("degree bookkeeping: act lands in degree |c| + k") {
  ProductSpace sp(5, 2, 15);
  for (int d = 0; d <= 13; ++d)
    for (std::size_t i = 0; i < sp.dim(d); ++i)
      for (int k = 1; d + k <= 15; ++k) {
        Vec out = sp.sq(k, d, sp.class_of(sp.basis(d)[i]));
        CHECK(out.size() == sp.dim(d + k));
      }
}

TEST_CASE("mod-3 K(Z,5) fixture table") {
  const auto& t = km5_mod3_table();
  REQUIRE(t.size() == 5);
  CHECK(t[0] == std::make_pair(5, std::vector<std::string>{"l5"}));
  CHECK(t[4].first == 14);
  CHECK(t[4].second.size() == 2);
}
