#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bazext/modbuild.hpp"

using namespace bzx;

TEST_CASE("trivial module") {
  for (int p : {2, 3}) {
    ModulePresentation m = trivial_module(p);
    CHECK(m.dim(0) == 1);
    for (int d = 1; d <= 20; ++d) CHECK(m.dim(d) == 0);
    for (const auto& [key, act] : m.actions) {
      (void)key;
      CHECK(act[0].empty());
    }
    CHECK_NOTHROW(relation_sweep(m));
  }
}

TEST_CASE("H*(B;F2) matches the reference table") {
  ModulePresentation m = build_HB_mod2(15);
  std::vector<std::size_t> want(16, 0);
  want[0] = 1;
  want[2] = want[4] = want[7] = want[8] = 1;
  want[9] = want[10] = 2;
  want[11] = want[12] = want[13] = 3;
  want[14] = want[15] = 4;
  for (int d = 0; d <= 15; ++d) CHECK(m.dim(d) == want[d]);

  // Sq2 u = ux
  int u = m.find("u");
  REQUIRE(u >= 0);
  Vec uv(m.dim(7), 0);
  uv[m.local_index(u)] = 1;
  Vec sq2u = m.act_gen("Sq2", 7, uv);
  Vec ux(m.dim(9), 0);
  ux[m.local_index(m.find("ux"))] = 1;
  CHECK(sq2u == ux);

  // Sq1 v = Sq2Sq1u
  Vec vv(m.dim(9), 0);
  vv[m.local_index(m.find("v"))] = 1;
  Vec sq1v = m.act_gen("Sq1", 9, vv);
  Vec want10(m.dim(10), 0);
  want10[m.local_index(m.find("Sq2Sq1u"))] = 1;
  CHECK(sq1v == want10);

  // degree-13 basis names
  CHECK(m.find("vx2") >= 0);
  CHECK(m.find("xSq4u") >= 0);
  CHECK(m.find("Sq6u") >= 0);

  CHECK_NOTHROW(relation_sweep(m));
}

TEST_CASE("Thom twist of H*(B;F2)") {
  ModulePresentation b = build_HB_mod2(15);
  ModulePresentation m = thom_twist(b, sw_eta(7));
  CHECK(m.dim(0) == 1);
  CHECK(m.basis[0].name == "U");

  // Sq1 U = 0, Sq2 U = xU, Sq4 U = 0
  Vec unit{1};
  Vec sq1 = m.act_gen("Sq1", 0, unit);
  for (uint8_t c : sq1) CHECK(c == 0);
  Vec sq2 = m.act_gen("Sq2", 0, unit);
  Vec xU(m.dim(2), 0);
  xU[m.local_index(m.find("xU"))] = 1;
  CHECK(sq2 == xU);
  Vec sq4 = m.act_gen("Sq4", 0, unit);
  for (uint8_t c : sq4) CHECK(c == 0);

  CHECK_NOTHROW(relation_sweep(m));
  // the twist does not depend on which admissible k is used at p = 2
  ModulePresentation m15 = thom_twist(b, sw_eta(15));
  CHECK(save_module_json(m15) == save_module_json(m));
}

TEST_CASE("thom twist of the trivial bundle is the base with shifted labels") {
  ModulePresentation b = build_HB_mod2(15);
  SWClassList trivial_sw;  // w = (1)
  ModulePresentation m = thom_twist(b, trivial_sw);
  for (std::size_t i = 0; i < b.basis.size(); ++i) CHECK(m.basis[i].degree == b.basis[i].degree);
  for (const auto& key : {"Sq1", "Sq2", "Sq4"})
    for (std::size_t i = 0; i < b.basis.size(); ++i)
      CHECK(m.actions.at(key)[i] == b.actions.at(key)[i]);
}

TEST_CASE("H*(B;F3) table module and its Thom twist") {
  ModulePresentation m = build_HB_mod3(14, 1, 0);
  CHECK(m.dim(9) == 1);
  CHECK(m.dim(13) == 2);
  CHECK(m.dim(14) == 2);
  CHECK(m.dim(5) == 0);

  // P1 z9 = z13
  Vec z9(m.dim(9), 0);
  z9[m.local_index(m.find("z9"))] = 1;
  Vec p1z9 = m.act_gen("P1", 9, z9);
  Vec z13(m.dim(13), 0);
  z13[m.local_index(m.find("z13"))] = 1;
  CHECK(p1z9 == z13);

  // P1 b z9 = -b z13 + m x^2 b z9 with m = 2 here (the correction term must
  // land in degree 14, hence carries the Bockstein)
  ModulePresentation m2 = build_HB_mod3(14, 1, 2);
  Vec bz9(m2.dim(10), 0);
  bz9[m2.local_index(m2.find("bz9"))] = 1;
  Vec got = m2.act_gen("P1", 10, bz9);
  Vec want(m2.dim(14), 0);
  want[m2.local_index(m2.find("bz13"))] = 2;   // -1 mod 3
  want[m2.local_index(m2.find("x2bz9"))] = 2;
  CHECK(got == want);

  // beta x = 0
  Vec x(m.dim(2), 0);
  x[m.local_index(m.find("x"))] = 1;
  Vec bx = m.act_gen("b", 2, x);
  for (uint8_t c : bx) CHECK(c == 0);

  CHECK_NOTHROW(relation_sweep(m));
  CHECK_NOTHROW(relation_sweep(m2));

  ModulePresentation meta = build_Meta3(1, 0);
  CHECK_NOTHROW(relation_sweep(meta));
  // P1 U = -k x^2 U
  Vec unit{1};
  Vec p1u = meta.act_gen("P1", 0, unit);
  Vec x2U(meta.dim(4), 0);
  x2U[meta.local_index(meta.find("x2U"))] = 2;  // -1 mod 3 for k = 1
  CHECK(p1u == x2U);
  // beta U = 0
  Vec bu = meta.act_gen("b", 0, unit);
  for (uint8_t c : bu) CHECK(c == 0);
}

TEST_CASE("module JSON round trip") {
  for (const char* name : {"trivial2", "trivial3", "HB2", "Meta2", "HB3", "Meta3"}) {
    ModulePresentation m = builtin_module(name);
    std::string text = save_module_json(m);
    ModulePresentation back = load_module_json(text);
    CHECK(save_module_json(back) == text);
  }
}

TEST_CASE("loading a module violating Sq1 Sq1 = 0 raises RelationError naming the element") {
  ModulePresentation m;
  m.prime = 2;
  m.truncation = 4;
  m.basis = {{"a", 0}, {"b", 1}, {"c", 2}};
  m.finalize();
  m.actions["Sq1"] = {{{1, 1}}, {{2, 1}}, {}};  // Sq1 Sq1 a = c != 0
  m.actions["Sq2"] = {{}, {}, {}};
  m.actions["Sq4"] = {{}, {}, {}};
  std::string text = save_module_json(m);
  CHECK_THROWS_AS((void)load_module_json(text), RelationError);
  try {
    (void)load_module_json(text);
  } catch (const RelationError& e) {
    CHECK(std::string(e.what()).find("a") != std::string::npos);
  }
}

TEST_CASE("load of the trivial module fixture") {
  ModulePresentation m = load_module_json(save_module_json(trivial_module(2)));
  CHECK(m.dim(0) == 1);
}

TEST_CASE("sw_eta rejects k with nonvanishing degree-4 class") {
  CHECK_THROWS(sw_eta(2));
  CHECK_NOTHROW(sw_eta(7));
  CHECK_NOTHROW(sw_eta(15));
  CHECK_NOTHROW(sw_eta(31));
}
