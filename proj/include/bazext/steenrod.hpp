#pragma once

// The mod-2 and mod-3 Steenrod algebras: words in the generators, Adem
// normalization onto the admissible basis, excess, Cartan pairs, and the
// finite (sub)algebras the homological layer resolves over.
//
// A Word encodes a product of generators:
//   p = 2 : entry k >= 1 means Sq^k
//   p = 3 : entry 0 means the Bockstein beta, entry k >= 1 means P^k
// The empty word is the unit.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bazext/fplin.hpp"

namespace bzx {

using Word = std::vector<int>;

int gen_degree(int prime, int g);
int word_degree(int prime, const Word& w);
bool word_admissible(int prime, const Word& w);
std::string word_str(int prime, const Word& w);  // e.g. "Sq2Sq1", "bP1"

// Fixed monomial order: lexicographic on the entry sequences, larger entry
// first; a longer word precedes its extensions.  All matrix layouts downstream
// inherit this order.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const;
};

using Combo = std::map<Word, int, WordLess>;  // admissible words -> coeff in 1..p-1

class SteenrodElement {
 public:
  SteenrodElement() = default;
  explicit SteenrodElement(int prime) : prime_(prime) {}
  static SteenrodElement monomial(int prime, const Word& w, int coeff = 1);

  int prime() const { return prime_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // degree of the (homogeneous) element; 0 if zero
  const Combo& terms() const { return terms_; }

  void add_term(const Word& w, int coeff);
  SteenrodElement& operator+=(const SteenrodElement& o);
  SteenrodElement scaled(int c) const;
  bool operator==(const SteenrodElement& o) const;

 private:
  int prime_ = 2;
  Combo terms_;
};

// Adem normal form of a word / formal combination of words.
SteenrodElement adem_normalize(int prime, const Word& word);
SteenrodElement normalize_combo(int prime, const std::vector<std::pair<Word, int>>& combo);
SteenrodElement product(const SteenrodElement& a, const SteenrodElement& b);

// e(I) = 2 i_1 - (i_1 + ... + i_r) for an admissible mod-2 word; unit -> 0.
int excess(const Word& admissible);

// All admissible words of the full mod-p algebra in one degree, in the fixed
// monomial order.
std::vector<Word> admissible_basis(int prime, int degree);

// Cartan expansion of Sq^k (p=2) or P^k (p=3) as (left, right) word pairs;
// the empty word stands for 1.  beta acts as a derivation and is not listed.
std::vector<std::pair<Word, Word>> cartan_pairs(int prime, int k);

// binomial coefficient mod p by Lucas' theorem
int binom_mod(long long n, long long k, int p);

// ---------------------------------------------------------------------------

enum class AlgKind { A1, A2, FullMod2, A3 };  // A3 = degree-truncated full mod-3 algebra

int alg_prime(AlgKind k);
std::string alg_name(AlgKind k);
AlgKind alg_from_name(const std::string& s);

// One basis element of a finite (sub)algebra: its coordinates over the
// admissible basis of its degree, its admissible normal form, and one
// representation as a combination of generator words (used to act on modules
// that only store generator matrices).
struct AlgebraElt {
  int degree = 0;
  Vec coords;  // over admissible_basis(prime, degree)
  SteenrodElement nf;
  std::vector<std::pair<Word, int>> words;  // combination of words in the generators
};

class Algebra {
 public:
  // Cached per (kind, cap); safe for concurrent use after construction.
  static const Algebra& get(AlgKind kind, int cap);

  AlgKind kind() const { return kind_; }
  int prime() const { return prime_; }
  int cap() const { return cap_; }
  const std::vector<Word>& generators() const { return gens_; }
  const std::vector<std::string>& generator_names() const { return gen_names_; }

  const std::vector<Word>& admissible(int deg) const { return adm_[deg]; }
  const std::vector<AlgebraElt>& basis(int deg) const { return basis_[deg]; }
  std::size_t dim(int deg) const { return deg <= cap_ ? basis_[deg].size() : 0; }

  // coordinates of a (homogeneous) element in the closure basis of its degree;
  // throws std::runtime_error if the element is not in the subalgebra
  Vec express(const SteenrodElement& e) const;

  // product of basis elements, as coordinates over basis(d1 + d2);
  // empty vector if d1 + d2 > cap
  const Vec& mult(int d1, std::size_t i1, int d2, std::size_t i2) const;

 private:
  Algebra(AlgKind kind, int cap);
  AlgKind kind_;
  int prime_;
  int cap_;
  std::vector<Word> gens_;
  std::vector<std::string> gen_names_;
  std::vector<std::vector<Word>> adm_;          // per degree 0..cap
  std::vector<std::map<Word, int, WordLess>> adm_index_;
  std::vector<std::vector<AlgebraElt>> basis_;  // per degree, echelonized closure
  // mult_[d1][i1][d2] = concatenated coord rows over basis(d1+d2)
  std::vector<std::vector<std::vector<std::vector<Vec>>>> mult_;
  Vec express_in_degree(int deg, const Vec& coords) const;
};

}  // namespace bzx
