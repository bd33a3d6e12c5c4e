#pragma once

// Unstable mod-2 cohomology of K(Z,n) x CP^m: monomial bases in the
// Serre-Cartan generators Sq^I l_n (admissible, e(I) < n, i_r > 1) and the
// degree-2 class x, together with the unstable Steenrod action.

#include <map>
#include <string>
#include <vector>

#include "bazext/fplin.hpp"
#include "bazext/steenrod.hpp"

namespace bzx {

// Admissible words I valid for K(Z,n) mod 2: e(I) < n, i_r > 1, plus the
// empty word (l_n itself); only words with n + deg(I) <= max_deg.
std::vector<Word> km_generators(int n, int max_deg);

// One monomial of H*(K(Z,n) x CP^m; F_2): a multiset of generator words and a
// power of x.
struct EmMono {
  std::vector<Word> k;  // sorted with WordLess
  int xe = 0;
  bool operator==(const EmMono& o) const { return k == o.k && xe == o.xe; }
  bool operator<(const EmMono& o) const;
};

class ProductSpace {
 public:
  // xtrunc: power with x^{xtrunc+1} = 0 (CP^m has xtrunc = m); xtrunc < 0
  // means CP^infinity.  Pass n <= 0 for a bare projective-space factor.
  ProductSpace(int n, int xtrunc, int max_deg);

  int n() const { return n_; }
  int max_deg() const { return maxdeg_; }
  const std::vector<EmMono>& basis(int deg) const { return basis_[deg]; }
  std::size_t dim(int deg) const { return deg <= maxdeg_ ? basis_[deg].size() : 0; }

  int mono_degree(const EmMono& m) const;
  int index_of(const EmMono& m, int deg) const;
  Vec class_of(const EmMono& m) const;
  std::string mono_name(const EmMono& m) const;
  std::string vec_name(int deg, const Vec& v) const;

  // cup product; degrees must satisfy da + db <= max_deg
  Vec mul(int da, const Vec& a, int db, const Vec& b) const;
  // Sq^k; requires deg + k <= max_deg
  Vec sq(int k, int deg, const Vec& v) const;
  // word acts right-to-left (Sq^{w_0} applied last)
  Vec act_word(const Word& w, int deg, const Vec& v) const;
  Vec act_element(const SteenrodElement& e, int op_degree, int deg, const Vec& v) const;

 private:
  int n_, xtrunc_, maxdeg_;
  std::vector<Word> gens_;                      // K-side generator words, sorted
  std::vector<std::vector<EmMono>> basis_;      // per degree
  std::vector<std::map<EmMono, int>> index_;    // per degree
  mutable std::map<std::pair<int, std::pair<int, int>>, Vec> sq_cache_;  // (k,(deg,idx))
  Vec sq_mono(int k, const EmMono& m) const;
  Vec resolve_on_ln(const Word& admissible) const;  // Sq^I l_n, unstably
  Vec square_class(int deg, const Vec& v) const;
};

// The paper-table fixture for H*(K(Z,5); F_3) through degree 14 (this is
// never computed from an unstable rule): degree -> class names.
const std::vector<std::pair<int, std::vector<std::string>>>& km5_mod3_table();

}  // namespace bzx
