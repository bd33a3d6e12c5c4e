#pragma once

// Topological Atiyah-Hirzebruch ledger: E_2 pages from homology and
// coefficient tables by cyclic-summand arithmetic, the rule differentials
// (d_2 dual to Sq^2 on rows 0 and 1; the ko d_3 dual to Sq^2 Sq^1 on row 2),
// replay of asserted differentials from scenario data, and order accounting.

#include <map>
#include <string>
#include <vector>

#include "bazext/modbuild.hpp"

namespace bzx {

struct LedgerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FgAbelianGroup {
  std::vector<long long> orders;  // 0 encodes an infinite cyclic summand

  void canonicalize();
  bool is_zero() const { return orders.empty(); }
  int free_rank() const;
  long long order() const;  // product of finite orders; 0 when a Z is present
  std::string str() const;
  bool operator==(const FgAbelianGroup& o) const { return orders == o.orders; }
};

FgAbelianGroup tensor(const FgAbelianGroup& a, const FgAbelianGroup& b);
FgAbelianGroup tor_product(const FgAbelianGroup& a, const FgAbelianGroup& b);

// ---------------------------------------------------------------------------

struct AhssEntry {
  FgAbelianGroup g;
  bool exact = true;  // isomorphism type known; order is always right
};

struct AhssPage {
  std::map<std::pair<int, int>, AhssEntry> entries;  // (p,q), zero omitted
  const AhssEntry* find(int p, int q) const;
  long long order_at(int p, int q) const;  // 1 if absent, 0 if infinite
};

// E_2^{p,q} = H_p (x) pi_q + Tor(H_{p-1}, pi_q)
AhssPage e2_page(const std::map<int, FgAbelianGroup>& homology,
                 const std::map<int, FgAbelianGroup>& coefficients);

// Lemma-5.1 rule: d_2 out of rows 0 and 1, computed from the Sq^2 action of
// the mod-2 cohomology module (H^p(X;F_2) = module degree p).  Touches only
// rows 0, 1, 2.  Requires every even torsion order in the homology table to
// be exactly 2 (that identifies the integral-reduction annihilator with the
// image of Sq^1).
void apply_sq2_rule(AhssPage& page, const std::map<int, FgAbelianGroup>& homology,
                    const ModulePresentation& mod2, std::vector<std::string>* log = nullptr);

// Theorem-9.3(3) rule for ko coefficients: d_3 : E_3^{p+3,2} -> E_3^{p,4},
// dual to Sq^2 Sq^1; touches rows 2 and 4 only.
void apply_ko_d3_rule(AhssPage& page, const std::map<int, FgAbelianGroup>& homology,
                      const ModulePresentation& mod2, std::vector<std::string>* log = nullptr);

// ---------------------------------------------------------------------------

struct Assertion {
  int page = 2;
  int sp = 0, sq = 0, tp = 0, tq = 0;
  long long image_order = 1;  // order of the asserted image (a prime power)
  std::string note;
};

struct Expectation {
  int page = -1;  // -1 = after everything (E_infinity)
  int p = 0, q = 0;
  FgAbelianGroup g;
};

struct Claim {
  int degree = 0;
  long long total_order = 0;
};

struct ScenarioBranch {
  std::string name;
  std::vector<Assertion> assertions;
  std::vector<Expectation> expects;
  std::vector<Claim> claims;
};

struct Scenario {
  std::string name;
  std::string provenance;
  long long s = 7;
  std::map<int, FgAbelianGroup> homology;
  std::map<int, FgAbelianGroup> coefficients;
  std::string sq2_module;  // builtin:NAME or path; empty = no rule modules
  bool ko_rules = false;
  std::vector<Assertion> assertions;
  std::vector<Expectation> expects;
  std::vector<Claim> claims;
  std::vector<ScenarioBranch> branches;
  int report_min_total = 12, report_max_total = 14;
};

Scenario scenario_from_json(const std::string& text);

struct ReplayReport {
  bool ok = true;
  std::string text;
  std::string json;
};

ReplayReport replay(const Scenario& sc);

}  // namespace bzx
