#include "bazext/fplin.hpp"

#include <algorithm>

namespace bzx {

FpMatrix::FpMatrix(int prime, std::size_t rows, std::size_t cols)
    : p_(prime), r_(rows), c_(cols) {
  if (prime != 2 && prime != 3) throw std::invalid_argument("FpMatrix: prime must be 2 or 3");
  if (p_ == 2) {
    w_ = (c_ + 63) / 64;
    b2_.assign(r_ * w_, 0);
  } else {
    b3_.assign(r_ * c_, 0);
  }
}

uint8_t FpMatrix::get(std::size_t r, std::size_t c) const {
  if (p_ == 2) return static_cast<uint8_t>((b2_[r * w_ + c / 64] >> (c % 64)) & 1u);
  return b3_[r * c_ + c];
}

void FpMatrix::set(std::size_t r, std::size_t c, uint8_t v) {
  if (p_ == 2) {
    uint64_t& w = b2_[r * w_ + c / 64];
    uint64_t bit = uint64_t(1) << (c % 64);
    if (v & 1)
      w |= bit;
    else
      w &= ~bit;
  } else {
    b3_[r * c_ + c] = static_cast<uint8_t>(v % 3);
  }
}

Vec FpMatrix::row(std::size_t r) const {
  Vec v(c_, 0);
  for (std::size_t c = 0; c < c_; ++c) v[c] = get(r, c);
  return v;
}

void FpMatrix::set_row(std::size_t r, const Vec& v) {
  for (std::size_t c = 0; c < c_; ++c) set(r, c, c < v.size() ? v[c] : 0);
}

FpMatrix FpMatrix::from_rows(int prime, std::size_t cols, const std::vector<Vec>& rows) {
  FpMatrix m(prime, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

FpMatrix FpMatrix::identity(int prime, std::size_t n) {
  FpMatrix m(prime, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FpMatrix FpMatrix::transposed() const {
  FpMatrix t(p_, c_, r_);
  for (std::size_t r = 0; r < r_; ++r)
    for (std::size_t c = 0; c < c_; ++c) {
      uint8_t v = get(r, c);
      if (v) t.set(c, r, v);
    }
  return t;
}

FpMatrix FpMatrix::mul(const FpMatrix& o) const {
  if (c_ != o.r_ || p_ != o.p_) throw std::invalid_argument("FpMatrix::mul: shape mismatch");
  FpMatrix out(p_, r_, o.c_);
  for (std::size_t r = 0; r < r_; ++r)
    for (std::size_t k = 0; k < c_; ++k) {
      uint8_t a = get(r, k);
      if (!a) continue;
      if (p_ == 2) {
        for (std::size_t w = 0; w < out.w_; ++w) out.b2_[r * out.w_ + w] ^= o.b2_[k * o.w_ + w];
      } else {
        for (std::size_t c = 0; c < o.c_; ++c)
          out.b3_[r * out.c_ + c] =
              static_cast<uint8_t>((out.b3_[r * out.c_ + c] + a * o.b3_[k * o.c_ + c]) % 3);
      }
    }
  return out;
}

Vec FpMatrix::apply(const Vec& v) const {
  if (v.size() != c_) throw std::invalid_argument("FpMatrix::apply: dimension mismatch");
  Vec out(r_, 0);
  for (std::size_t r = 0; r < r_; ++r) {
    unsigned acc = 0;
    for (std::size_t c = 0; c < c_; ++c) acc += get(r, c) * v[c];
    out[r] = static_cast<uint8_t>(acc % p_);
  }
  return out;
}

bool FpMatrix::operator==(const FpMatrix& o) const {
  if (p_ != o.p_ || r_ != o.r_ || c_ != o.c_) return false;
  if (p_ == 2) return b2_ == o.b2_;
  return b3_ == o.b3_;
}

void FpMatrix::row_axpy(std::size_t dst, std::size_t src, uint8_t coeff) {
  if (!coeff) return;
  if (p_ == 2) {
    for (std::size_t w = 0; w < w_; ++w) b2_[dst * w_ + w] ^= b2_[src * w_ + w];
  } else {
    for (std::size_t c = 0; c < c_; ++c)
      b3_[dst * c_ + c] = static_cast<uint8_t>((b3_[dst * c_ + c] + coeff * b3_[src * c_ + c]) % 3);
  }
}

void FpMatrix::row_scale(std::size_t r, uint8_t coeff) {
  if (p_ == 2 || coeff == 1) return;
  for (std::size_t c = 0; c < c_; ++c)
    b3_[r * c_ + c] = static_cast<uint8_t>((b3_[r * c_ + c] * coeff) % 3);
}

void FpMatrix::row_swap(std::size_t a, std::size_t b) {
  if (a == b) return;
  if (p_ == 2) {
    for (std::size_t w = 0; w < w_; ++w) std::swap(b2_[a * w_ + w], b2_[b * w_ + w]);
  } else {
    for (std::size_t c = 0; c < c_; ++c) std::swap(b3_[a * c_ + c], b3_[b * c_ + c]);
  }
}

RowReduceResult row_reduce(const FpMatrix& m) {
  RowReduceResult res{m, {}};
  FpMatrix& e = res.echelon;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < m.rows() && e.get(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    e.row_swap(rank, piv);
    e.row_scale(rank, fp_inv(m.prime(), e.get(rank, col)));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank) continue;
      uint8_t v = e.get(r, col);
      if (v) e.row_axpy(r, rank, fp_neg(m.prime(), v));
    }
    res.pivots.push_back(col);
    ++rank;
  }
  return res;
}

std::size_t rank(const FpMatrix& m) { return row_reduce(m).pivots.size(); }

std::vector<Vec> kernel_basis(const FpMatrix& m) {
  RowReduceResult rr = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : rr.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols(), 0);
    v[f] = 1;
    for (std::size_t i = 0; i < rr.pivots.size(); ++i)
      v[rr.pivots[i]] = fp_neg(m.prime(), rr.echelon.get(i, f));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const FpMatrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs length != rows");
  // reduce the augmented matrix [M | b]
  FpMatrix aug(m.prime(), m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug.set(r, c, m.get(r, c));
    aug.set(r, m.cols(), b[r]);
  }
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < m.rows() && aug.get(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    aug.row_swap(rank, piv);
    aug.row_scale(rank, fp_inv(m.prime(), aug.get(rank, col)));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank) continue;
      uint8_t v = aug.get(r, col);
      if (v) aug.row_axpy(r, rank, fp_neg(m.prime(), v));
    }
    pivots.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < m.rows(); ++r)
    if (aug.get(r, m.cols())) return std::nullopt;  // inconsistent
  Vec x(m.cols(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.get(i, m.cols());
  return x;
}

Vec EchelonSpan::reduce(Vec v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    uint8_t c = v[pivots_[i]];
    if (!c) continue;
    uint8_t k = fp_neg(p_, c);
    for (std::size_t j = 0; j < dim_; ++j)
      v[j] = static_cast<uint8_t>((v[j] + k * rows_[i][j]) % p_);
  }
  return v;
}

bool EchelonSpan::insert(Vec v) {
  v = reduce(std::move(v));
  std::size_t piv = dim_;
  for (std::size_t j = 0; j < dim_; ++j)
    if (v[j]) {
      piv = j;
      break;
    }
  if (piv == dim_) return false;
  if (v[piv] != 1) {
    uint8_t inv = fp_inv(p_, v[piv]);
    for (std::size_t j = 0; j < dim_; ++j) v[j] = fp_mul(p_, v[j], inv);
  }
  // keep reduced form: clear this pivot column in existing rows
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    uint8_t c = rows_[i][piv];
    if (!c) continue;
    uint8_t k = fp_neg(p_, c);
    for (std::size_t j = 0; j < dim_; ++j)
      rows_[i][j] = static_cast<uint8_t>((rows_[i][j] + k * v[j]) % p_);
  }
  // insert keeping pivot columns sorted
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(v));
  pivots_.insert(pivots_.begin() + pos, piv);
  return true;
}

bool EchelonSpan::contains(const Vec& v) const {
  Vec r = reduce(v);
  for (uint8_t x : r)
    if (x) return false;
  return true;
}

std::optional<Vec> EchelonSpan::coords(Vec v) const {
  Vec c(rows_.size(), 0);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    uint8_t coef = v[pivots_[i]];
    if (!coef) continue;
    c[i] = coef;
    uint8_t k = fp_neg(p_, coef);
    for (std::size_t j = 0; j < dim_; ++j)
      v[j] = static_cast<uint8_t>((v[j] + k * rows_[i][j]) % p_);
  }
  for (uint8_t x : v)
    if (x) return std::nullopt;
  return c;
}

}  // namespace bzx
