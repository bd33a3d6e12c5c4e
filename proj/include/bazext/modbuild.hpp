#pragma once

// Finitely presented graded modules over A(1)/A(2) (p = 2) and the truncated
// mod-3 algebra: the trivial module, H*(B; F_p) in the working range, and the
// Thom modules H*(M eta; F_p).
//
// A presentation stores, per algebra generator, where each basis element is
// sent.  An action whose target degree exceeds the truncation is unknown, not
// zero; that is the only source of unknowns in the bundled modules.

#include <map>
#include <string>
#include <vector>

#include "bazext/fplin.hpp"
#include "bazext/steenrod.hpp"

namespace bzx {

struct RelationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModulePresentation {
  int prime = 2;
  int truncation = 0;
  struct Elt {
    std::string name;
    int degree;
  };
  std::vector<Elt> basis;                      // sorted by (degree, fixed order)
  std::vector<std::vector<int>> by_degree;     // indices per degree 0..truncation
  // generator key -> per-source list of (target index, coeff); sources whose
  // target degree exceeds the truncation carry no list (unknown)
  std::map<std::string, std::vector<std::vector<std::pair<int, uint8_t>>>> actions;
  std::string provenance;

  std::size_t dim(int deg) const {
    return (deg >= 0 && deg <= truncation) ? by_degree[deg].size() : 0;
  }
  int find(const std::string& name) const;
  int local_index(int global) const;  // position within its degree
  void finalize();                    // builds by_degree; call after filling basis

  int gen_degree_of(const std::string& key) const;
  bool action_known(const std::string& key, int source_degree) const;
  // action of one generator on a degree-d coordinate vector
  Vec act_gen(const std::string& key, int deg, const Vec& v) const;
  // action of a word in generator letters (algebra Word encoding), rightmost first
  Vec act_word(const Word& w, int deg, const Vec& v) const;
  // action of a formal combination of generator words
  Vec act_words(const std::vector<std::pair<Word, int>>& ws, int deg, const Vec& v) const;
  std::string letter_key(int letter) const;
};

ModulePresentation trivial_module(int prime);

// H*(B; F_2) through max_deg <= 15, realized inside H*(K(Z,5) x CP^2; F_2) as
// the closure of {x, u, v} under products and Steenrod operations; hard
// failure if any per-degree dimension disagrees with the reference table.
ModulePresentation build_HB_mod2(int max_deg = 15);

struct SWClassList {
  // w[i] = coefficient of x^i in w_{2i}(eta) mod 2 (w[0] = 1); odd-degree
  // classes vanish
  std::vector<uint8_t> w{1};
  int p1_coeff_mod3 = 0;  // p_1(eta) = p1_coeff * x^2 mod 3
};
// w(eta) = (1+x)^{-k} with x^3 = 0; requires the degree-4 part to vanish,
// which holds for k = 7 or 15 (mod 24)
SWClassList sw_eta(int k);

ModulePresentation thom_twist(const ModulePresentation& base, const SWClassList& sw);

// H*(B; F_3) through max_deg <= 14 from the reference table, with
// P1 z9 = z13 and P1 b z9 = -b z13 + m x^2 z9.
ModulePresentation build_HB_mod3(int max_deg = 14, int k_mod3 = 1, int m = 0);
// Thom module H*(M eta; F_3): multiplies in U with P1 U = -k x^2 U, beta U = 0.
ModulePresentation build_Meta3(int k_mod3 = 1, int m = 0);

// named builders for the CLI: trivial2, trivial3, HB2, Meta2, HB3, Meta3
// (Meta3/HB3 accept ?k=..&m=.. suffixes)
ModulePresentation builtin_module(const std::string& name);

std::string save_module_json(const ModulePresentation& m);
ModulePresentation load_module_json(const std::string& text);
void save_module(const ModulePresentation& m, const std::string& path);
ModulePresentation load_module(const std::string& path);

// checks every Adem-relation operator identity among the stored generators
// wherever both sides land within the truncation; throws RelationError
void relation_sweep(const ModulePresentation& m);

}  // namespace bzx
