#pragma once

// Exact dense linear algebra over F_2 and F_3.
//
// F_2 matrices are stored as bit-packed 64-bit words per row; F_3 matrices as
// one byte per entry.  Pivot selection is always leftmost-first with row order
// preserved, so every reduction is deterministic; downstream generator naming
// depends on this.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace bzx {

using Vec = std::vector<uint8_t>;  // entries in {0,...,p-1}

inline uint8_t fp_neg(int p, uint8_t a) { return static_cast<uint8_t>((p - a) % p); }
inline uint8_t fp_add(int p, uint8_t a, uint8_t b) { return static_cast<uint8_t>((a + b) % p); }
inline uint8_t fp_mul(int p, uint8_t a, uint8_t b) { return static_cast<uint8_t>((a * b) % p); }
inline uint8_t fp_inv(int p, uint8_t a) {
  // p is 2 or 3; nonzero elements are self-inverse
  (void)p;
  return a;
}

class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(int prime, std::size_t rows, std::size_t cols);

  int prime() const { return p_; }
  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }

  uint8_t get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, uint8_t v);
  void add_at(std::size_t r, std::size_t c, uint8_t v) { set(r, c, fp_add(p_, get(r, c), v)); }

  Vec row(std::size_t r) const;
  void set_row(std::size_t r, const Vec& v);

  static FpMatrix from_rows(int prime, std::size_t cols, const std::vector<Vec>& rows);
  static FpMatrix identity(int prime, std::size_t n);

  FpMatrix transposed() const;
  FpMatrix mul(const FpMatrix& other) const;
  Vec apply(const Vec& v) const;  // M * v

  bool operator==(const FpMatrix& o) const;

  // row operations (used by the eliminators)
  void row_axpy(std::size_t dst, std::size_t src, uint8_t coeff);  // dst += coeff*src
  void row_scale(std::size_t r, uint8_t coeff);
  void row_swap(std::size_t a, std::size_t b);

 private:
  int p_ = 2;
  std::size_t r_ = 0, c_ = 0, w_ = 0;
  std::vector<uint64_t> b2_;
  std::vector<uint8_t> b3_;
};

struct RowReduceResult {
  FpMatrix echelon;                 // reduced row-echelon form
  std::vector<std::size_t> pivots;  // strictly increasing column indices
};

RowReduceResult row_reduce(const FpMatrix& m);
std::size_t rank(const FpMatrix& m);

// Basis of {v : M v = 0}; vectors are linearly independent and their count is
// cols - rank.  Free variables are enumerated in ascending column order.
std::vector<Vec> kernel_basis(const FpMatrix& m);

// Some x with M x = b, or nullopt.  Free variables are set to 0 under the
// pivot ordering of row_reduce, so the choice is deterministic.
std::optional<Vec> solve(const FpMatrix& m, const Vec& b);

// Incrementally maintained reduced echelon basis of a subspace of F_p^dim.
class EchelonSpan {
 public:
  EchelonSpan(int prime, std::size_t dim) : p_(prime), dim_(dim) {}

  // v reduced against the span (unchanged dimension)
  Vec reduce(Vec v) const;
  // true if v enlarged the span
  bool insert(Vec v);
  bool contains(const Vec& v) const;
  // coefficients c with v = sum c_i * basis_row_i, or nullopt if v outside
  std::optional<Vec> coords(Vec v) const;

  std::size_t dim_ambient() const { return dim_; }
  std::size_t size() const { return rows_.size(); }
  const Vec& basis_row(std::size_t i) const { return rows_[i]; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  int p_;
  std::size_t dim_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace bzx
