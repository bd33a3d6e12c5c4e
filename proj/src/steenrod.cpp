#include "bazext/steenrod.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace bzx {

int gen_degree(int prime, int g) {
  if (prime == 2) return g;
  return g == 0 ? 1 : 4 * g;  // |beta| = 1, |P^k| = 2k(p-1) = 4k
}

int word_degree(int prime, const Word& w) {
  int d = 0;
  for (int g : w) d += gen_degree(prime, g);
  return d;
}

bool word_admissible(int prime, const Word& w) {
  if (prime == 2) {
    for (int g : w)
      if (g < 1) return false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] < 2 * w[i + 1]) return false;
    return true;
  }
  // p = 3: pattern beta^e0 P^{s1} beta^e1 ... P^{sk} beta^ek with
  // s_j >= 3 s_{j+1} + e_j
  std::size_t i = 0;
  if (i < w.size() && w[i] == 0) ++i;  // leading beta
  int prev_s = -1;
  bool prev_beta = false;
  while (i < w.size()) {
    if (w[i] == 0) {
      if (prev_beta) return false;  // beta beta
      prev_beta = true;
      ++i;
      continue;
    }
    int s = w[i];
    if (prev_s >= 0 && prev_s < 3 * s + (prev_beta ? 1 : 0)) return false;
    prev_s = s;
    prev_beta = false;
    ++i;
  }
  return true;
}

std::string word_str(int prime, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (int g : w) {
    if (prime == 2)
      s += "Sq" + std::to_string(g);
    else
      s += g == 0 ? std::string("b") : "P" + std::to_string(g);
  }
  return s;
}

bool WordLess::operator()(const Word& a, const Word& b) const {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return a.size() > b.size();  // longer word first on prefix ties
}

SteenrodElement SteenrodElement::monomial(int prime, const Word& w, int coeff) {
  SteenrodElement e(prime);
  e.add_term(w, coeff);
  return e;
}

int SteenrodElement::degree() const {
  if (terms_.empty()) return 0;
  return word_degree(prime_, terms_.begin()->first);
}

void SteenrodElement::add_term(const Word& w, int coeff) {
  coeff = ((coeff % prime_) + prime_) % prime_;
  if (!coeff) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, coeff);
  } else {
    it->second = (it->second + coeff) % prime_;
    if (!it->second) terms_.erase(it);
  }
}

SteenrodElement& SteenrodElement::operator+=(const SteenrodElement& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

SteenrodElement SteenrodElement::scaled(int c) const {
  SteenrodElement e(prime_);
  for (const auto& [w, k] : terms_) e.add_term(w, k * c);
  return e;
}

bool SteenrodElement::operator==(const SteenrodElement& o) const {
  return prime_ == o.prime_ && terms_ == o.terms_;
}

int binom_mod(long long n, long long k, int p) {
  if (k < 0 || n < 0 || k > n) return 0;
  int r = 1;
  while (n > 0 || k > 0) {
    long long ni = n % p, ki = k % p;
    if (ki > ni) return 0;
    // small cases: C(ni,ki) for ni,ki < p <= 3
    int c = 1;
    for (int i = 0; i < ki; ++i) c = c * int(ni - i) / (i + 1);
    r = (r * c) % p;
    n /= p;
    k /= p;
  }
  return r;
}

namespace {

// Rewrites the leftmost inadmissible spot of a word; returns the replacement
// as word/coefficient pairs, or false if the word is already admissible.
bool rewrite_once(int prime, const Word& w, std::vector<std::pair<Word, int>>& out) {
  out.clear();
  if (prime == 2) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      int a = w[i], b = w[i + 1];
      if (a >= 2 * b) continue;
      // Sq^a Sq^b = sum_c C(b-c-1, a-2c) Sq^{a+b-c} Sq^c   (a < 2b)
      for (int c = 0; 2 * c <= a; ++c) {
        if (!binom_mod(b - c - 1, a - 2 * c, 2)) continue;
        Word r(w.begin(), w.begin() + i);
        r.push_back(a + b - c);
        if (c > 0) r.push_back(c);
        r.insert(r.end(), w.begin() + i + 2, w.end());
        out.emplace_back(std::move(r), 1);
      }
      return true;
    }
    return false;
  }
  // p = 3
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] == 0 && w[i + 1] == 0) return true;  // beta beta = 0, out stays empty
    if (w[i] >= 1 && w[i + 1] >= 1 && w[i] < 3 * w[i + 1]) {
      int a = w[i], b = w[i + 1];
      // P^a P^b = sum_t (-1)^{a+t} C(2(b-t)-1, a-3t) P^{a+b-t} P^t
      for (int t = 0; 3 * t <= a; ++t) {
        int c = binom_mod(2 * (b - t) - 1, a - 3 * t, 3);
        if (!c) continue;
        int sign = ((a + t) % 2) ? -1 : 1;
        Word r(w.begin(), w.begin() + i);
        r.push_back(a + b - t);
        if (t > 0) r.push_back(t);
        r.insert(r.end(), w.begin() + i + 2, w.end());
        out.emplace_back(std::move(r), sign * c);
      }
      return true;
    }
    if (i + 2 < w.size() && w[i] >= 1 && w[i + 1] == 0 && w[i + 2] >= 1 &&
        w[i] <= 3 * w[i + 2]) {
      int a = w[i], b = w[i + 2];
      // P^a beta P^b = sum_t (-1)^{a+t}   C(2(b-t),   a-3t)   beta P^{a+b-t} P^t
      //             + sum_t (-1)^{a+t-1} C(2(b-t)-1, a-3t-1) P^{a+b-t} beta P^t
      for (int t = 0; 3 * t <= a; ++t) {
        int c = binom_mod(2 * (b - t), a - 3 * t, 3);
        if (!c) continue;
        int sign = ((a + t) % 2) ? -1 : 1;
        Word r(w.begin(), w.begin() + i);
        r.push_back(0);
        r.push_back(a + b - t);
        if (t > 0) r.push_back(t);
        r.insert(r.end(), w.begin() + i + 3, w.end());
        out.emplace_back(std::move(r), sign * c);
      }
      for (int t = 0; 3 * t <= a - 1; ++t) {
        int c = binom_mod(2 * (b - t) - 1, a - 3 * t - 1, 3);
        if (!c) continue;
        int sign = ((a + t - 1) % 2 + 2) % 2 ? -1 : 1;
        Word r(w.begin(), w.begin() + i);
        r.push_back(a + b - t);
        r.push_back(0);
        if (t > 0) r.push_back(t);
        r.insert(r.end(), w.begin() + i + 3, w.end());
        out.emplace_back(std::move(r), sign * c);
      }
      return true;
    }
  }
  return false;
}

}  // namespace

SteenrodElement normalize_combo(int prime, const std::vector<std::pair<Word, int>>& combo) {
  SteenrodElement result(prime);
  std::map<Word, int, WordLess> pending;
  auto push = [&](const Word& w, int c) {
    c = ((c % prime) + prime) % prime;
    if (!c) return;
    auto it = pending.find(w);
    if (it == pending.end())
      pending.emplace(w, c);
    else {
      it->second = (it->second + c) % prime;
      if (!it->second) pending.erase(it);
    }
  };
  for (const auto& [w, c] : combo) push(w, c);
  std::vector<std::pair<Word, int>> repl;
  std::size_t guard = 0;
  while (!pending.empty()) {
    if (++guard > 2000000) throw std::runtime_error("adem_normalize: rewrite did not terminate");
    auto it = pending.begin();
    Word w = it->first;
    int c = it->second;
    pending.erase(it);
    if (!rewrite_once(prime, w, repl)) {
      result.add_term(w, c);
      continue;
    }
    for (const auto& [rw, rc] : repl) push(rw, rc * c);
  }
  return result;
}

SteenrodElement adem_normalize(int prime, const Word& word) {
  return normalize_combo(prime, {{word, 1}});
}

SteenrodElement product(const SteenrodElement& a, const SteenrodElement& b) {
  if (a.prime() != b.prime()) throw std::invalid_argument("product: mixed primes");
  std::vector<std::pair<Word, int>> combo;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      combo.emplace_back(std::move(w), ca * cb);
    }
  return normalize_combo(a.prime(), combo);
}

int excess(const Word& I) {
  if (I.empty()) return 0;
  int sum = 0;
  for (int i : I) sum += i;
  return 2 * I[0] - sum;
}

namespace {

void admissible2_rec(int deg, int maxfirst, Word& cur, std::vector<Word>& out) {
  if (deg == 0) {
    out.push_back(cur);
    return;
  }
  for (int j = std::min(deg, maxfirst); j >= 1; --j) {
    cur.push_back(j);
    admissible2_rec(deg - j, j / 2, cur, out);
    cur.pop_back();
  }
}

// mod-3 chains P^{s1} beta^{e1} P^{s2} ... with s_j >= 3 s_{j+1} + e_j
void admissible3_rec(int deg, int maxs, Word& cur, std::vector<Word>& out) {
  if (deg == 0) {
    out.push_back(cur);
    return;
  }
  for (int s = std::min(deg / 4, maxs); s >= 1; --s) {
    int rem = deg - 4 * s;
    // trailing-or-linking beta after P^s
    cur.push_back(s);
    if (rem == 0) {
      out.push_back(cur);
    } else {
      // continue without a beta: next P^{s'} with s >= 3 s'
      admissible3_rec(rem, s / 3, cur, out);
      // with a beta: next P^{s'} with s >= 3 s' + 1, or the beta is trailing
      cur.push_back(0);
      if (rem == 1)
        out.push_back(cur);
      else
        admissible3_rec(rem - 1, (s - 1) / 3, cur, out);
      cur.pop_back();
    }
    cur.pop_back();
  }
}

}  // namespace

std::vector<Word> admissible_basis(int prime, int degree) {
  std::vector<Word> out;
  if (degree == 0) {
    out.push_back({});
    return out;
  }
  if (prime == 2) {
    Word cur;
    admissible2_rec(degree, degree, cur, out);
  } else {
    Word cur;
    // optional leading beta
    admissible3_rec(degree, degree / 4, cur, out);
    if (degree >= 1) {
      std::vector<Word> tail;
      if (degree == 1) {
        tail.push_back({});
      } else {
        admissible3_rec(degree - 1, degree / 4, cur, tail);
      }
      for (auto& t : tail) {
        Word w;
        w.push_back(0);
        w.insert(w.end(), t.begin(), t.end());
        out.push_back(std::move(w));
      }
    }
    std::sort(out.begin(), out.end(), WordLess{});
  }
  return out;
}

std::vector<std::pair<Word, Word>> cartan_pairs(int prime, int k) {
  std::vector<std::pair<Word, Word>> out;
  for (int i = 0; i <= k; ++i) {
    Word l, r;
    if (i > 0) l.push_back(i);
    if (k - i > 0) r.push_back(k - i);
    out.emplace_back(std::move(l), std::move(r));
  }
  (void)prime;  // same shape for Sq^k and P^k
  return out;
}

// ---------------------------------------------------------------------------

int alg_prime(AlgKind k) { return k == AlgKind::A3 ? 3 : 2; }

std::string alg_name(AlgKind k) {
  switch (k) {
    case AlgKind::A1: return "A1";
    case AlgKind::A2: return "A2";
    case AlgKind::FullMod2: return "A";
    case AlgKind::A3: return "A3";
  }
  return "?";
}

AlgKind alg_from_name(const std::string& s) {
  if (s == "A1" || s == "A(1)") return AlgKind::A1;
  if (s == "A2" || s == "A(2)") return AlgKind::A2;
  if (s == "A" || s == "full" || s == "full2") return AlgKind::FullMod2;
  if (s == "A3" || s == "full3") return AlgKind::A3;
  throw std::invalid_argument("unknown subalgebra name: " + s);
}

namespace {

struct WordCombo {
  std::vector<std::pair<Word, int>> terms;  // kept sorted by WordLess
  void axpy(int prime, int coeff, const std::vector<std::pair<Word, int>>& src) {
    for (const auto& [w, c] : src) {
      int v = ((c * coeff) % prime + prime) % prime;
      if (!v) continue;
      auto it = std::lower_bound(
          terms.begin(), terms.end(), w,
          [](const std::pair<Word, int>& a, const Word& b) { return WordLess{}(a.first, b); });
      if (it != terms.end() && it->first == w) {
        it->second = (it->second + v) % prime;
        if (!it->second) terms.erase(it);
      } else {
        terms.insert(it, {w, v});
      }
    }
  }
};

}  // namespace

Algebra::Algebra(AlgKind kind, int cap) : kind_(kind), prime_(alg_prime(kind)), cap_(cap) {
  switch (kind) {
    case AlgKind::A1:
      gens_ = {{1}, {2}};
      gen_names_ = {"Sq1", "Sq2"};
      break;
    case AlgKind::A2:
      gens_ = {{1}, {2}, {4}};
      gen_names_ = {"Sq1", "Sq2", "Sq4"};
      break;
    case AlgKind::FullMod2:
      for (int k = 1; k <= cap; k *= 2) {
        gens_.push_back({k});
        gen_names_.push_back("Sq" + std::to_string(k));
      }
      break;
    case AlgKind::A3:
      gens_ = {{0}, {1}, {3}};
      gen_names_ = {"b", "P1", "P3"};
      break;
  }
  adm_.resize(cap + 1);
  adm_index_.resize(cap + 1);
  basis_.resize(cap + 1);
  for (int d = 0; d <= cap; ++d) {
    adm_[d] = admissible_basis(prime_, d);
    for (std::size_t i = 0; i < adm_[d].size(); ++i) adm_index_[d].emplace(adm_[d][i], int(i));
  }
  auto coords_of = [&](const SteenrodElement& e, int d) {
    Vec v(adm_[d].size(), 0);
    for (const auto& [w, c] : e.terms()) v[adm_index_[d].at(w)] = static_cast<uint8_t>(c);
    return v;
  };
  // degree 0: the unit
  {
    AlgebraElt unit;
    unit.degree = 0;
    unit.coords = {1};
    unit.nf = SteenrodElement::monomial(prime_, {});
    unit.words = {{Word{}, 1}};
    basis_[0].push_back(std::move(unit));
  }
  // close under left multiplication by the generators, degree by degree
  for (int d = 1; d <= cap; ++d) {
    std::vector<std::pair<Vec, WordCombo>> rows;  // echelon rows with word payloads
    auto insert_aug = [&](Vec v, WordCombo wc) -> bool {
      // reduce against existing rows, tracking payload combination
      for (std::size_t i = 0; i < rows.size(); ++i) {
        std::size_t piv = 0;
        while (piv < v.size() && rows[i].first[piv] == 0) ++piv;
        if (piv == v.size()) continue;
        uint8_t c = v[piv];
        if (!c) continue;
        uint8_t k = fp_neg(prime_, c);
        for (std::size_t j = 0; j < v.size(); ++j)
          v[j] = static_cast<uint8_t>((v[j] + k * rows[i].first[j]) % prime_);
        wc.axpy(prime_, k, rows[i].second.terms);
      }
      std::size_t piv = v.size();
      for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j]) {
          piv = j;
          break;
        }
      if (piv == v.size()) return false;
      if (v[piv] != 1) {
        uint8_t inv = fp_inv(prime_, v[piv]);
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = fp_mul(prime_, v[j], inv);
        WordCombo scaled;
        scaled.axpy(prime_, inv, wc.terms);
        wc = std::move(scaled);
      }
      // keep rows sorted by pivot, back-eliminate
      for (auto& [rv, rwc] : rows) {
        uint8_t c = rv[piv];
        if (!c) continue;
        uint8_t k = fp_neg(prime_, c);
        for (std::size_t j = 0; j < v.size(); ++j)
          rv[j] = static_cast<uint8_t>((rv[j] + k * v[j]) % prime_);
        rwc.axpy(prime_, k, wc.terms);
      }
      std::size_t pos = 0;
      while (pos < rows.size()) {
        std::size_t rp = 0;
        for (rp = 0; rp < v.size(); ++rp)
          if (rows[pos].first[rp]) break;
        if (rp > piv) break;
        ++pos;
      }
      rows.insert(rows.begin() + pos, {std::move(v), std::move(wc)});
      return true;
    };
    if (kind == AlgKind::FullMod2) {
      // the whole algebra: admissible monomials, each its own word
      for (std::size_t i = 0; i < adm_[d].size(); ++i) {
        AlgebraElt e;
        e.degree = d;
        e.coords.assign(adm_[d].size(), 0);
        e.coords[i] = 1;
        e.nf = SteenrodElement::monomial(2, adm_[d][i]);
        e.words = {{adm_[d][i], 1}};
        basis_[d].push_back(std::move(e));
      }
      continue;
    }
    for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
      int gd = word_degree(prime_, gens_[gi]);
      if (gd > d) continue;
      for (const auto& b : basis_[d - gd]) {
        std::vector<std::pair<Word, int>> combo;
        for (const auto& [w, c] : b.nf.terms()) {
          Word lw = gens_[gi];
          lw.insert(lw.end(), w.begin(), w.end());
          combo.emplace_back(std::move(lw), c);
        }
        SteenrodElement nf = normalize_combo(prime_, combo);
        if (nf.is_zero()) continue;
        WordCombo wc;
        for (const auto& [w, c] : b.words) {
          Word lw = gens_[gi];
          lw.insert(lw.end(), w.begin(), w.end());
          wc.axpy(prime_, 1, {{lw, c}});
        }
        insert_aug(coords_of(nf, d), std::move(wc));
      }
    }
    for (auto& [rv, rwc] : rows) {
      AlgebraElt e;
      e.degree = d;
      e.coords = rv;
      SteenrodElement nf(prime_);
      for (std::size_t i = 0; i < rv.size(); ++i)
        if (rv[i]) nf.add_term(adm_[d][i], rv[i]);
      e.nf = std::move(nf);
      e.words = rwc.terms;
      basis_[d].push_back(std::move(e));
    }
  }
  if (kind == AlgKind::A3) {
    // {beta, P^1, P^3} generate everything in low degrees (P^9 starts at 36);
    // the closure must therefore span all admissible monomials below the cap
    for (int d = 0; d <= cap; ++d)
      if (basis_[d].size() != adm_[d].size())
        throw std::runtime_error("A3 closure misses admissible classes in degree " +
                                 std::to_string(d));
  }
  // multiplication table
  mult_.resize(cap + 1);
  for (int d1 = 0; d1 <= cap; ++d1) {
    mult_[d1].resize(basis_[d1].size());
    for (std::size_t i1 = 0; i1 < basis_[d1].size(); ++i1) {
      mult_[d1][i1].resize(cap - d1 + 1);
      for (int d2 = 0; d1 + d2 <= cap; ++d2) {
        mult_[d1][i1][d2].resize(basis_[d2].size());
        for (std::size_t i2 = 0; i2 < basis_[d2].size(); ++i2) {
          SteenrodElement pr = product(basis_[d1][i1].nf, basis_[d2][i2].nf);
          mult_[d1][i1][d2][i2] =
              pr.is_zero() ? Vec(basis_[d1 + d2].size(), 0) : express(pr);
        }
      }
    }
  }
}

Vec Algebra::express_in_degree(int deg, const Vec& coords) const {
  // solve against the echelon closure basis of this degree
  Vec v = coords;
  Vec out(basis_[deg].size(), 0);
  for (std::size_t i = 0; i < basis_[deg].size(); ++i) {
    // leading pivot of row i
    std::size_t piv = 0;
    while (piv < v.size() && basis_[deg][i].coords[piv] == 0) ++piv;
    uint8_t c = piv < v.size() ? v[piv] : 0;
    if (!c) continue;
    out[i] = c;
    uint8_t k = fp_neg(prime_, c);
    for (std::size_t j = 0; j < v.size(); ++j)
      v[j] = static_cast<uint8_t>((v[j] + k * basis_[deg][i].coords[j]) % prime_);
  }
  for (uint8_t x : v)
    if (x) throw std::runtime_error("Algebra::express: element outside subalgebra");
  return out;
}

Vec Algebra::express(const SteenrodElement& e) const {
  if (e.is_zero()) throw std::runtime_error("Algebra::express: zero element has no degree");
  int d = e.degree();
  Vec coords(adm_[d].size(), 0);
  for (const auto& [w, c] : e.terms()) coords[adm_index_[d].at(w)] = static_cast<uint8_t>(c);
  return express_in_degree(d, coords);
}

const Vec& Algebra::mult(int d1, std::size_t i1, int d2, std::size_t i2) const {
  return mult_[d1][i1][d2][i2];
}

const Algebra& Algebra::get(AlgKind kind, int cap) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, const Algebra*> cache;
  // A1/A2 are finite; build them once at their top degree
  if (kind == AlgKind::A1) cap = std::max(cap, 6);
  if (kind == AlgKind::A2) cap = std::max(cap, 23);
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_pair(int(kind), cap);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  // reuse a bigger cache entry when available
  for (const auto& [k, v] : cache)
    if (k.first == int(kind) && k.second >= cap) return *v;
  const Algebra* alg = new Algebra(kind, cap);
  cache.emplace(key, alg);
  return *alg;
}

}  // namespace bzx
