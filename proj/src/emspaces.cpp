#include "bazext/emspaces.hpp"

#include <algorithm>
#include <stdexcept>

namespace bzx {

std::vector<Word> km_generators(int n, int max_deg) {
  if (n < 2 || max_deg < n) throw std::invalid_argument("km_generators: need n >= 2, max_deg >= n");
  std::vector<Word> out;
  for (int d = 0; n + d <= max_deg; ++d) {
    for (const auto& w : admissible_basis(2, d)) {
      if (w.empty()) {
        out.push_back(w);  // l_n itself
        continue;
      }
      if (w.back() <= 1) continue;
      if (excess(w) >= n) continue;
      out.push_back(w);
    }
  }
  return out;
}

bool EmMono::operator<(const EmMono& o) const {
  if (k.size() != o.k.size()) return k.size() < o.k.size();
  for (std::size_t i = 0; i < k.size(); ++i)
    if (!(k[i] == o.k[i])) return WordLess{}(k[i], o.k[i]);
  return xe < o.xe;
}

ProductSpace::ProductSpace(int n, int xtrunc, int max_deg)
    : n_(n), xtrunc_(xtrunc), maxdeg_(max_deg) {
  if (n_ > 0) gens_ = km_generators(n_, max_deg);
  basis_.resize(maxdeg_ + 1);
  index_.resize(maxdeg_ + 1);
  // enumerate monomials: multisets over gens_ (non-decreasing index) times x^e
  struct Enum {
    ProductSpace* self;
    std::vector<Word> cur;
    int cur_deg = 0;
    void go(std::size_t from) {
      int max_xe = (self->maxdeg_ - cur_deg) / 2;
      if (self->xtrunc_ >= 0) max_xe = std::min(max_xe, self->xtrunc_);
      std::vector<Word> sorted = cur;
      std::sort(sorted.begin(), sorted.end(), WordLess{});
      for (int xe = 0; xe <= max_xe; ++xe)
        self->basis_[cur_deg + 2 * xe].push_back(EmMono{sorted, xe});
      for (std::size_t i = from; i < self->gens_.size(); ++i) {
        int gd = self->n_ + word_degree(2, self->gens_[i]);
        if (cur_deg + gd > self->maxdeg_) continue;
        cur.push_back(self->gens_[i]);
        cur_deg += gd;
        go(i);
        cur_deg -= gd;
        cur.pop_back();
      }
    }
  };
  Enum en{this, {}, 0};
  en.go(0);
  for (int d = 0; d <= maxdeg_; ++d) {
    std::sort(basis_[d].begin(), basis_[d].end());
    for (std::size_t i = 0; i < basis_[d].size(); ++i) index_[d].emplace(basis_[d][i], int(i));
  }
}

int ProductSpace::mono_degree(const EmMono& m) const {
  int d = 2 * m.xe;
  for (const auto& w : m.k) d += n_ + word_degree(2, w);
  return d;
}

int ProductSpace::index_of(const EmMono& m, int deg) const {
  auto it = index_[deg].find(m);
  if (it == index_[deg].end()) return -1;
  return it->second;
}

Vec ProductSpace::class_of(const EmMono& m) const {
  EmMono s = m;
  std::sort(s.k.begin(), s.k.end(), WordLess{});
  int deg = mono_degree(s);
  Vec v(basis_[deg].size(), 0);
  int idx = index_of(s, deg);
  if (idx < 0) throw std::runtime_error("class_of: monomial not in basis (truncated?)");
  v[idx] = 1;
  return v;
}

std::string ProductSpace::mono_name(const EmMono& m) const {
  std::string s;
  for (const auto& w : m.k) {
    if (!s.empty()) s += ".";
    if (w.empty())
      s += "l" + std::to_string(n_);
    else
      s += word_str(2, w) + "l" + std::to_string(n_);
  }
  if (m.xe > 0) {
    if (!s.empty()) s += ".";
    s += m.xe == 1 ? "x" : "x^" + std::to_string(m.xe);
  }
  if (s.empty()) s = "1";
  return s;
}

std::string ProductSpace::vec_name(int deg, const Vec& v) const {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) {
      if (!s.empty()) s += " + ";
      s += mono_name(basis_[deg][i]);
    }
  return s.empty() ? "0" : s;
}

Vec ProductSpace::mul(int da, const Vec& a, int db, const Vec& b) const {
  int dd = da + db;
  if (dd > maxdeg_) throw std::invalid_argument("ProductSpace::mul: degree above truncation");
  Vec out(basis_[dd].size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b[j]) continue;
      const EmMono& ma = basis_[da][i];
      const EmMono& mb = basis_[db][j];
      EmMono m;
      m.k = ma.k;
      m.k.insert(m.k.end(), mb.k.begin(), mb.k.end());
      std::sort(m.k.begin(), m.k.end(), WordLess{});
      m.xe = ma.xe + mb.xe;
      if (xtrunc_ >= 0 && m.xe > xtrunc_) continue;  // x^{m+1} = 0
      int idx = index_of(m, dd);
      if (idx < 0) throw std::runtime_error("ProductSpace::mul: product not indexed");
      out[idx] ^= 1;
    }
  }
  return out;
}

Vec ProductSpace::square_class(int deg, const Vec& v) const {
  // Frobenius mod 2: (sum m_i)^2 = sum m_i^2
  int dd = 2 * deg;
  if (dd > maxdeg_) throw std::invalid_argument("square_class: degree above truncation");
  Vec out(basis_[dd].size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i]) continue;
    const EmMono& m = basis_[deg][i];
    EmMono sq;
    sq.k = m.k;
    sq.k.insert(sq.k.end(), m.k.begin(), m.k.end());
    std::sort(sq.k.begin(), sq.k.end(), WordLess{});
    sq.xe = 2 * m.xe;
    if (xtrunc_ >= 0 && sq.xe > xtrunc_) continue;
    int idx = index_of(sq, dd);
    if (idx < 0) throw std::runtime_error("square_class: not indexed");
    out[idx] ^= 1;
  }
  return out;
}

Vec ProductSpace::resolve_on_ln(const Word& adm) const {
  // evaluate an admissible word on l_n with the instability rules:
  // words ending in Sq^1 die on the integral class; excess == n squares,
  // excess > n kills
  int deg = n_ + word_degree(2, adm);
  if (deg > maxdeg_) throw std::invalid_argument("resolve_on_ln: degree above truncation");
  Vec zero(basis_[deg].size(), 0);
  if (adm.empty()) return class_of(EmMono{{Word{}}, 0});
  if (adm.back() == 1) return zero;
  if (excess(adm) < n_) return class_of(EmMono{{adm}, 0});
  if (excess(adm) > n_) return zero;
  Word tail(adm.begin() + 1, adm.end());
  int tdeg = n_ + word_degree(2, tail);
  Vec z = resolve_on_ln(tail);
  bool nonzero = false;
  for (uint8_t c : z) nonzero |= (c != 0);
  if (!nonzero) return zero;
  return square_class(tdeg, z);
}

Vec ProductSpace::sq_mono(int k, const EmMono& m) const {
  int deg = mono_degree(m);
  int target = deg + k;
  if (target > maxdeg_) throw std::invalid_argument("sq: target degree above truncation");
  if (k == 0) return class_of(m);
  int idx = index_of(m, deg);
  auto key = std::make_pair(k, std::make_pair(deg, idx));
  auto it = sq_cache_.find(key);
  if (it != sq_cache_.end()) return it->second;

  Vec out(basis_[target].size(), 0);
  if (m.k.empty() && m.xe == 0) {
    // Sq^k(1) = 0
  } else if (!m.k.empty()) {
    // Cartan over the first K-side factor and the rest
    EmMono rest = m;
    Word head = rest.k.front();
    rest.k.erase(rest.k.begin());
    int head_deg = n_ + word_degree(2, head);
    int rest_deg = deg - head_deg;
    for (int i = 0; i <= std::min(k, head_deg); ++i) {
      Vec left;
      if (i == 0) {
        left = class_of(EmMono{{head}, 0});
      } else {
        Word w;
        w.push_back(i);
        w.insert(w.end(), head.begin(), head.end());
        SteenrodElement nf = adem_normalize(2, w);
        left.assign(basis_[head_deg + i].size(), 0);
        for (const auto& [aw, c] : nf.terms()) {
          (void)c;
          Vec r = resolve_on_ln(aw);
          for (std::size_t j = 0; j < r.size(); ++j) left[j] ^= r[j];
        }
      }
      bool lz = true;
      for (uint8_t c : left) lz &= (c == 0);
      if (lz) continue;
      Vec right = sq(k - i, rest_deg, class_of(rest));
      bool rz = true;
      for (uint8_t c : right) rz &= (c == 0);
      if (rz) continue;
      Vec prod = mul(head_deg + i, left, rest_deg + (k - i), right);
      for (std::size_t j = 0; j < prod.size(); ++j) out[j] ^= prod[j];
    }
  } else {
    // pure power of x: split one x off; Sq on x is x (i=0) or x^2 (i=2)
    EmMono rest = m;
    rest.xe -= 1;
    for (int i : {0, 2}) {
      if (i > k) continue;
      EmMono xm{{}, 1 + i / 2};
      if (xtrunc_ >= 0 && xm.xe > xtrunc_) continue;
      Vec left = class_of(xm);
      Vec right = sq(k - i, deg - 2, class_of(rest));
      bool rz = true;
      for (uint8_t c : right) rz &= (c == 0);
      if (rz) continue;
      Vec prod = mul(2 + i, left, deg - 2 + (k - i), right);
      for (std::size_t j = 0; j < prod.size(); ++j) out[j] ^= prod[j];
    }
  }
  sq_cache_.emplace(key, out);
  return out;
}

Vec ProductSpace::sq(int k, int deg, const Vec& v) const {
  int target = deg + k;
  if (target > maxdeg_) throw std::invalid_argument("sq: target degree above truncation");
  Vec out(basis_[target].size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i]) continue;
    Vec t = sq_mono(k, basis_[deg][i]);
    for (std::size_t j = 0; j < t.size(); ++j) out[j] ^= t[j];
  }
  return out;
}

Vec ProductSpace::act_word(const Word& w, int deg, const Vec& v) const {
  Vec cur = v;
  int d = deg;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    cur = sq(*it, d, cur);
    d += *it;
  }
  return cur;
}

Vec ProductSpace::act_element(const SteenrodElement& e, int op_degree, int deg,
                              const Vec& v) const {
  if (e.prime() != 2) throw std::invalid_argument("act_element: mod-2 operations only");
  if (!e.is_zero() && e.degree() != op_degree)
    throw std::invalid_argument("act_element: operator degree mismatch");
  int target = deg + op_degree;
  Vec out(basis_[target].size(), 0);
  for (const auto& [w, c] : e.terms()) {
    (void)c;
    Vec t = act_word(w, deg, v);
    for (std::size_t j = 0; j < t.size(); ++j) out[j] ^= t[j];
  }
  return out;
}

const std::vector<std::pair<int, std::vector<std::string>>>& km5_mod3_table() {
  static const std::vector<std::pair<int, std::vector<std::string>>> table = {
      {5, {"l5"}}, {9, {"P1l5"}}, {10, {"bP1l5"}}, {13, {"P2l5"}}, {14, {"bP2l5", "l5P1l5"}},
  };
  return table;
}

}  // namespace bzx
