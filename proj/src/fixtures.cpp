#include "bazext/fixtures.hpp"

#include <stdexcept>

namespace bzx {

namespace {

// Homology of M eta (Thom isomorphism applied to the integral cohomology of B,
// universal coefficients): H_p for p <= 14, with the torsion parameter s.
// Coefficients pi_*(MO<8>) in dimensions <= 14, literature values.
const char* kMo8Scenario = R"JSON({
 "name": "mo8-smash-Meta",
 "provenance": "fixture: H_*(M eta) from the integral cohomology table of B via the Thom isomorphism; pi_*(MO<8>) in dimensions <= 14, literature values; differentials beyond the Sq^2 rule replay the survivor accounting of the 13-line",
 "s": 7,
 "homology": {
  "0": [0], "2": [0], "4": [0],
  "5": ["s"],
  "7": [2, "s"],
  "9": [2, 2, 3, "s"],
  "11": [2, 2, 2, 3, "s"],
  "13": [2, 2, 2, 3, 3, 5, "s"],
  "14": [2]
 },
 "coefficients": {
  "0": [0], "1": [2], "2": [2], "3": [3, 8], "6": [2],
  "8": [0, 2], "9": [2, 2], "10": [2, 3], "12": [0], "13": [3], "14": [2]
 },
 "sq2_module": "builtin:Meta2",
 "rules": ["sq2"],
 "assertions": [
  {"page": 2, "source": [12, 2], "target": [10, 3], "rank": 2,
   "note": "nontrivial d2 off the row-2 entry at p=12; the filtration-10 order-2 class survives alone"},
  {"page": 3, "source": [13, 0], "target": [10, 2], "rank": 2,
   "note": "second order-2 class of E^{13,0} dies; survivor accounting for the class detected at filtration 13"},
  {"page": 4, "source": [13, 0], "target": [9, 3], "rank": 3,
   "note": "one Z3 of E^{13,0} dies; the surviving Z3 carries the mod-3 orientation class"},
  {"page": 4, "source": [11, 3], "target": [7, 6], "rank": 2,
   "note": "E^{7,6} carries no homotopy on the 13-line"}
 ],
 "expect": [
  {"page": 3, "entry": [14, 0], "orders": []},
  {"page": "inf", "entry": [5, 8], "orders": ["s"]},
  {"page": "inf", "entry": [12, 1], "orders": [2]},
  {"page": "inf", "entry": [11, 2], "orders": [2, 2]}
 ],
 "branches": [
  {"name": "n=2, k=0 (mod 3)",
   "expect": [{"page": "inf", "entry": [13, 0], "orders": [2, 3, 5, "s"]},
              {"page": "inf", "entry": [10, 3], "orders": [2, 3]},
              {"page": "inf", "entry": [4, 9], "orders": [2, 2]},
              {"page": "inf", "entry": [0, 13], "orders": [3]}],
   "claims": [{"degree": 13, "total_order": 846720}]},
  {"name": "n=1, k=0 (mod 3)",
   "assertions": [{"page": 4, "source": [8, 6], "target": [4, 9], "rank": 2,
                   "note": "branch n=1: one order-2 class at filtration 4 dies"}],
   "expect": [{"page": "inf", "entry": [4, 9], "orders": [2]}],
   "claims": [{"degree": 13, "total_order": 423360}]},
  {"name": "n=2, k!=0 (mod 3)",
   "assertions": [{"page": 4, "source": [4, 10], "target": [0, 13], "rank": 3,
                   "note": "branch k!=0: the filtration-0 Z3 dies"}],
   "expect": [{"page": "inf", "entry": [0, 13], "orders": []}],
   "claims": [{"degree": 13, "total_order": 282240}]},
  {"name": "n=1, k!=0 (mod 3)",
   "assertions": [{"page": 4, "source": [8, 6], "target": [4, 9], "rank": 2,
                   "note": "branch n=1: one order-2 class at filtration 4 dies"},
                  {"page": 4, "source": [4, 10], "target": [0, 13], "rank": 3,
                   "note": "branch k!=0: the filtration-0 Z3 dies"}],
   "claims": [{"degree": 13, "total_order": 141120}]}
 ]
})JSON";

// ko coefficients: Z, Z2, Z2, 0, Z, 0, 0, 0 repeating (Bott periodicity).
const char* kKoScenario = R"JSON({
 "name": "ko-smash-Meta",
 "provenance": "fixture: H_*(M eta) as in mo8-smash-Meta; pi_*(ko) = Z, Z2, Z2, 0, Z, 0, 0, 0 with Bott periodicity; rules: d2 dual to Sq^2 on rows 0,1 and the ko d3 dual to Sq^2 Sq^1 on row 2",
 "s": 7,
 "homology": {
  "0": [0], "2": [0], "4": [0],
  "5": ["s"],
  "7": [2, "s"],
  "9": [2, 2, 3, "s"],
  "11": [2, 2, 2, 3, "s"],
  "13": [2, 2, 2, 3, 3, 5, "s"],
  "14": [2]
 },
 "coefficients": {
  "0": [0], "1": [2], "2": [2], "4": [0],
  "8": [0], "9": [2], "10": [2], "12": [0]
 },
 "sq2_module": "builtin:Meta2",
 "rules": ["sq2", "ko_d3"],
 "expect": [
  {"page": 3, "entry": [14, 0], "orders": []},
  {"page": 4, "entry": [9, 4], "orders": [2, 3, "s"]},
  {"page": 4, "entry": [12, 2], "orders": []}
 ],
 "report_totals": [13, 13]
})JSON";

}  // namespace

std::string builtin_scenario_json(const std::string& name) {
  if (name == "mo8-smash-Meta" || name == "theorem21") return kMo8Scenario;
  if (name == "ko-smash-Meta") return kKoScenario;
  throw std::invalid_argument("unknown builtin scenario: " + name);
}

std::vector<std::string> builtin_scenario_names() {
  return {"mo8-smash-Meta", "ko-smash-Meta", "theorem21"};
}

}  // namespace bzx
