#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bazext/resolve.hpp"

using namespace bzx;

TEST_CASE("stage 0 is a minimal cover; stage 1 of the trivial module is dual to the generators") {
  ModulePresentation triv = trivial_module(2);
  Resolution r1 = minimal_resolution(triv, AlgKind::A1, 2, 8);
  REQUIRE(r1.gens[0].size() == 1);
  CHECK(r1.gens[0][0].degree == 0);
  // stage 1: generators at t = 1 (dual Sq1) and t = 2 (dual Sq2)
  REQUIRE(r1.gens[1].size() == 2);
  CHECK(r1.gens[1][0].degree == 1);
  CHECK(r1.gens[1][1].degree == 2);

  Resolution r2 = minimal_resolution(triv, AlgKind::A2, 1, 8);
  std::vector<int> degs;
  for (const auto& g : r2.gens[1]) degs.push_back(g.degree);
  CHECK(degs == std::vector<int>{1, 2, 4});  // kernel of the augmentation: Sq1, Sq2, Sq4
}

TEST_CASE("A(1) chart of the trivial module: named positions and d o d = 0") {
  ModulePresentation triv = trivial_module(2);
  Resolution r = minimal_resolution(triv, AlgKind::A1, 6, 14);
  CHECK_NOTHROW(verify_resolution(r, triv));
  ExtChart c = ext_chart(r);
  CHECK(c.dim(1, 2) == 1);   // h1
  CHECK(c.dim(3, 7) == 1);   // v
  CHECK(c.dim(4, 12) == 1);  // w
  for (int s = 0; s <= 6; ++s) CHECK(c.dim(s, s) == 1);  // h0 tower
  CHECK(c.dim(2, 3) == 0);   // h0 h1 = 0
  CHECK(c.dim(2, 4) == 1);   // h1^2
  CHECK(c.dim(3, 6) == 0);   // h1^3 = 0
  CHECK(c.aliases.at({1, 2}) == "h1");
  CHECK(c.aliases.at({3, 7}) == "v");
  // h0 towers over v: ko pi_4 = Z
  CHECK(c.dim(4, 8) == 1);
  CHECK(c.dim(5, 9) == 1);
}

TEST_CASE("A(2) trivial chart: named classes") {
  ModulePresentation triv = trivial_module(2);
  Resolution r = minimal_resolution(triv, AlgKind::A2, 4, 13);
  CHECK_NOTHROW(verify_resolution(r, triv));
  ExtChart c = ext_chart(r);
  CHECK(c.dim(1, 2) == 1);   // h1
  CHECK(c.dim(1, 4) == 1);   // h2
  CHECK(c.dim(2, 8) == 1);   // h2^2
  CHECK(c.dim(3, 11) == 1);  // c0
  CHECK(c.dim(4, 12) == 1);  // w
  for (int s = 0; s <= 4; ++s) CHECK(c.dim(s, s) == 1);
}

TEST_CASE("Meta2 over A(2): Ext^{0,13} contains the class named vx2U") {
  ModulePresentation meta = builtin_module("Meta2");
  Resolution r = minimal_resolution(meta, AlgKind::A2, 1, 14);
  ExtChart c = ext_chart(r);
  CHECK(c.dim(0, 13) >= 1);
  bool found = false;
  for (const auto& g : r.gens[0])
    if (g.degree == 13 && g.name == "vx2U") found = true;
  CHECK(found);
}

TEST_CASE("mod-3 trivial module over the truncated full algebra, small window") {
  ModulePresentation triv = trivial_module(3);
  Resolution r = minimal_resolution(triv, AlgKind::A3, 3, 14);
  CHECK_NOTHROW(verify_resolution(r, triv));
  ExtChart c = ext_chart(r);
  for (int s = 0; s <= 3; ++s) CHECK(c.dim(s, s) == 1);  // a0 tower
  CHECK(c.dim(1, 4) == 1);   // h10
  CHECK(c.dim(1, 12) == 1);  // h11
  CHECK(c.dim(2, 9) == 1);   // P0 h0
  CHECK(c.dim(2, 12) == 1);  // b0
  CHECK(c.dim(2, 13) == 1);  // a0 h11
  CHECK(c.dim(3, 13) == 1);  // a0 b0
  CHECK(c.dim(3, 14) == 1);  // a0^2 h11
  CHECK(c.dim(2, 5) == 0);   // a0 h10 = 0 (alpha_1 has order 3)
}

TEST_CASE("chart TSV round trip, empty chart, diff") {
  ExtChart empty;
  empty.prime = 2;
  empty.subalgebra = AlgKind::A1;
  std::string tsv = chart_tsv(empty);
  CHECK(tsv.find("s\tt\tdim") != std::string::npos);
  ExtChart back = chart_from_tsv(tsv);
  CHECK(back.dims.empty());

  ModulePresentation triv = trivial_module(2);
  ExtChart c = ext_chart(minimal_resolution(triv, AlgKind::A1, 5, 12));
  ExtChart c2 = chart_from_tsv(chart_tsv(c));
  CHECK(chart_diff(c, c2).empty());
  CHECK(c2.aliases == c.aliases);

  ExtChart mutated = c;
  mutated.dims[{2, 5}] = 1;  // injected discrepancy
  std::string report = chart_diff(c, mutated);
  CHECK(report == "(2,5): 0 != 1\n");
}

TEST_CASE("SVG dots match the chart content") {
  ModulePresentation triv = trivial_module(2);
  ExtChart c = ext_chart(minimal_resolution(triv, AlgKind::A1, 4, 10));
  std::string svg = chart_svg(c);
  std::size_t dots = 0, pos = 0;
  while ((pos = svg.find("<circle", pos)) != std::string::npos) {
    ++dots;
    pos += 7;
  }
  std::size_t total = 0;
  for (const auto& [p, d] : c.dims) {
    (void)p;
    total += d;
  }
  CHECK(dots == total);
}

TEST_CASE("reliability: t_max above the module truncation is rejected") {
  ModulePresentation hb = build_HB_mod2(15);
  CHECK_THROWS_AS((void)minimal_resolution(hb, AlgKind::A2, 2, 16), ReliabilityError);
}
