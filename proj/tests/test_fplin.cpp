#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bazext/fplin.hpp"

using namespace bzx;

namespace {

FpMatrix random_matrix(int prime, std::size_t r, std::size_t c, std::mt19937& rng) {
  FpMatrix m(prime, r, c);
  std::uniform_int_distribution<int> d(0, prime - 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, static_cast<uint8_t>(d(rng)));
  return m;
}

// brute-force 2x2 reduction used as the oracle for the mod-3 example
std::size_t rank2x2_bruteforce(int p, int a, int b, int c, int d) {
  // rank = 0 iff all zero; rank 1 iff rows dependent; else 2
  bool zero = !(a % p) && !(b % p) && !(c % p) && !(d % p);
  if (zero) return 0;
  int det = ((a * d - b * c) % p + p) % p;
  return det ? 2 : 1;
}

}  // namespace

TEST_CASE("row_reduce identity and zero") {
  FpMatrix id = FpMatrix::identity(2, 3);
  auto rr = row_reduce(id);
  CHECK(rr.pivots == std::vector<std::size_t>{0, 1, 2});
  CHECK(rr.echelon == id);

  FpMatrix z(2, 2, 4);
  CHECK(row_reduce(z).pivots.empty());
}

TEST_CASE("mod-3 2x2 example agrees with the brute-force oracle") {
  // [[1,2],[2,1]] over F_3: det = 1 - 4 = -3 = 0, so rank is 1, not 2
  CHECK(rank2x2_bruteforce(3, 1, 2, 2, 1) == 1);
  FpMatrix m(3, 2, 2);
  m.set(0, 0, 1);
  m.set(0, 1, 2);
  m.set(1, 0, 2);
  m.set(1, 1, 1);
  auto rr = row_reduce(m);
  CHECK(rr.pivots == std::vector<std::size_t>{0});
  CHECK(rank(m) == 1);
}

TEST_CASE("row_reduce is idempotent") {
  std::mt19937 rng(7);
  for (int p : {2, 3})
    for (int trial = 0; trial < 20; ++trial) {
      FpMatrix m = random_matrix(p, 8, 11, rng);
      auto rr = row_reduce(m);
      auto rr2 = row_reduce(rr.echelon);
      CHECK(rr2.echelon == rr.echelon);
      CHECK(rr2.pivots == rr.pivots);
    }
}

TEST_CASE("kernel basics") {
  CHECK(kernel_basis(FpMatrix::identity(2, 4)).empty());
  CHECK(kernel_basis(FpMatrix(3, 2, 3)).size() == 3);
}

TEST_CASE("kernel of random 6x6 over F2 matches exhaustive search") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    FpMatrix m = random_matrix(2, 6, 6, rng);
    std::size_t null_count = 0;
    for (unsigned mask = 0; mask < 64; ++mask) {
      Vec v(6);
      for (int j = 0; j < 6; ++j) v[j] = (mask >> j) & 1;
      Vec out = m.apply(v);
      bool zero = true;
      for (uint8_t x : out) zero &= (x == 0);
      if (zero) ++null_count;
    }
    auto kb = kernel_basis(m);
    CHECK((std::size_t(1) << kb.size()) == null_count);
    CHECK(kb.size() == 6 - rank(m));
    for (const auto& v : kb) {
      Vec out = m.apply(v);
      for (uint8_t x : out) CHECK(x == 0);
    }
  }
}

TEST_CASE("solve: identity, inconsistent, and random consistent systems") {
  FpMatrix id = FpMatrix::identity(3, 4);
  Vec b{1, 2, 0, 1};
  auto x = solve(id, b);
  REQUIRE(x.has_value());
  CHECK(*x == b);

  FpMatrix z(2, 3, 4);
  CHECK(!solve(z, Vec{1, 0, 0}).has_value());

  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    FpMatrix m = random_matrix(2, 5, 7, rng);
    Vec sol(7);
    for (auto& v : sol) v = static_cast<uint8_t>(rng() & 1);
    Vec b2 = m.apply(sol);
    auto got = solve(m, b2);
    REQUIRE(got.has_value());
    CHECK(m.apply(*got) == b2);
  }
  CHECK_THROWS_AS((void)solve(FpMatrix(2, 2, 2), Vec{1, 0, 0}), std::invalid_argument);
}

TEST_CASE("rank(M) == rank(M^T) on random matrices up to 50x50") {
  std::mt19937 rng(23);
  for (int p : {2, 3})
    for (int trial = 0; trial < 15; ++trial) {
      std::uniform_int_distribution<std::size_t> dim(1, 50);
      FpMatrix m = random_matrix(p, dim(rng), dim(rng), rng);
      CHECK(rank(m) == rank(m.transposed()));
    }
}

TEST_CASE("every solution is the deterministic one plus a kernel combination") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    FpMatrix m = random_matrix(2, 4, 6, rng);
    Vec sol(6);
    for (auto& v : sol) v = static_cast<uint8_t>(rng() & 1);
    Vec b = m.apply(sol);
    auto x0 = solve(m, b);
    REQUIRE(x0.has_value());
    // difference of two solutions lies in the kernel span
    EchelonSpan ker(2, 6);
    for (const auto& v : kernel_basis(m)) ker.insert(v);
    Vec diff(6);
    for (int j = 0; j < 6; ++j) diff[j] = static_cast<uint8_t>((sol[j] ^ (*x0)[j]));
    CHECK(ker.contains(diff));
  }
}

TEST_CASE("EchelonSpan coords") {
  EchelonSpan sp(3, 4);
  CHECK(sp.insert(Vec{1, 2, 0, 0}));
  CHECK(sp.insert(Vec{0, 1, 1, 0}));
  CHECK(!sp.insert(Vec{1, 0, 1, 0}));  // dependent: (1,2,0,0) + (0,1,1,0) = (1,0,1,0) mod 3
  auto c = sp.coords(Vec{1, 0, 1, 0});
  REQUIRE(c.has_value());
  Vec rebuilt(4, 0);
  for (std::size_t i = 0; i < c->size(); ++i)
    for (std::size_t j = 0; j < 4; ++j)
      rebuilt[j] = static_cast<uint8_t>((rebuilt[j] + (*c)[i] * sp.basis_row(i)[j]) % 3);
  CHECK(rebuilt == Vec{1, 0, 1, 0});
  CHECK(!sp.coords(Vec{0, 0, 0, 1}).has_value());
}
