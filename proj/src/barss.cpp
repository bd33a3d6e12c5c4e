#include "bazext/barss.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <tuple>

namespace bzx {

namespace {

// packed column reduction over F_2, byte columns over F_3
struct PackedCols {
  int prime;
  std::size_t dim;
  std::size_t words;
  std::vector<std::vector<uint64_t>> cols2;
  std::vector<std::vector<uint8_t>> cols3;

  PackedCols(int p, std::size_t d) : prime(p), dim(d), words((d + 63) / 64) {}

  void push(const std::vector<std::pair<int, uint8_t>>& sparse) {
    if (prime == 2) {
      std::vector<uint64_t> v(words, 0);
      for (const auto& [r, c] : sparse)
        if (c & 1) v[r / 64] ^= uint64_t(1) << (r % 64);
      cols2.push_back(std::move(v));
    } else {
      std::vector<uint8_t> v(dim, 0);
      for (const auto& [r, c] : sparse) v[r] = static_cast<uint8_t>((v[r] + c) % 3);
      cols3.push_back(std::move(v));
    }
  }

  int top(std::size_t j) const {
    if (prime == 2) {
      const auto& v = cols2[j];
      for (std::size_t w = words; w-- > 0;)
        if (v[w]) return int(w * 64 + 63 - __builtin_clzll(v[w]));
      return -1;
    }
    const auto& v = cols3[j];
    for (std::size_t r = dim; r-- > 0;)
      if (v[r]) return int(r);
    return -1;
  }

  void eliminate(std::size_t j, std::size_t owner, int row) {
    if (prime == 2) {
      const auto& o = cols2[owner];
      auto& v = cols2[j];
      for (std::size_t w = 0; w < words; ++w) v[w] ^= o[w];
    } else {
      auto& v = cols3[j];
      const auto& o = cols3[owner];
      uint8_t k = static_cast<uint8_t>((3 - v[row]) % 3);  // owner normalized to 1 at row
      for (std::size_t r = 0; r < dim; ++r) v[r] = static_cast<uint8_t>((v[r] + k * o[r]) % 3);
    }
  }

  void normalize(std::size_t j, int row) {
    if (prime == 3 && cols3[j][row] == 2) {
      auto& v = cols3[j];
      for (std::size_t r = 0; r < dim; ++r) v[r] = static_cast<uint8_t>((v[r] * 2) % 3);
    }
  }

  Vec dense(std::size_t j) const {
    Vec v(dim, 0);
    if (prime == 2) {
      for (std::size_t r = 0; r < dim; ++r)
        v[r] = static_cast<uint8_t>((cols2[j][r / 64] >> (r % 64)) & 1);
    } else {
      v = cols3[j];
    }
    return v;
  }
};

}  // namespace

FilteredPairs reduce_filtered(const FilteredComplex& fc, const std::vector<int>& keep_reduced) {
  FilteredPairs out;
  out.pairs.resize(fc.boundary.size());
  out.reduced.resize(fc.boundary.size());
  for (std::size_t s = 1; s < fc.boundary.size(); ++s) {
    if (fc.boundary[s].empty()) continue;
    const auto& tgt_levels = fc.levels[s - 1];
    for (std::size_t i = 0; i + 1 < tgt_levels.size(); ++i)
      if (tgt_levels[i] < tgt_levels[i + 1])
        throw std::invalid_argument("reduce_filtered: slots not sorted by descending level");
    const auto& src_levels = fc.levels[s];
    for (std::size_t i = 0; i + 1 < src_levels.size(); ++i)
      if (src_levels[i] < src_levels[i + 1])
        throw std::invalid_argument("reduce_filtered: slots not sorted by descending level");
    PackedCols cols(fc.prime, tgt_levels.size());
    for (const auto& col : fc.boundary[s]) cols.push(col);
    std::vector<int> owner(tgt_levels.size(), -1);
    for (std::size_t j = 0; j < fc.boundary[s].size(); ++j) {
      for (;;) {
        int h = cols.top(j);
        if (h < 0) break;
        if (owner[h] < 0) {
          cols.normalize(j, h);
          owner[h] = int(j);
          out.pairs[s].push_back({int(j), h});
          break;
        }
        cols.eliminate(j, owner[h], h);
      }
    }
    if (std::find(keep_reduced.begin(), keep_reduced.end(), int(s)) != keep_reduced.end()) {
      out.reduced[s].resize(fc.boundary[s].size());
      for (std::size_t j = 0; j < fc.boundary[s].size(); ++j) out.reduced[s][j] = cols.dense(j);
    }
  }
  return out;
}

namespace {

// Z_r^p(s) = { x in F_p C_s : dx in F_{p+r} C_{s-1} }
std::vector<Vec> z_space(const FilteredComplex& fc, int r, int s, int p) {
  if (s < 0 || s >= int(fc.levels.size())) return {};
  std::size_t n = fc.levels[s].size();
  std::vector<int> srcs;
  for (std::size_t i = 0; i < n; ++i)
    if (fc.levels[s][i] >= p) srcs.push_back(int(i));
  bool has_d = s >= 1 && s < int(fc.boundary.size()) && !fc.boundary[s].empty();
  std::vector<int> bad_rows;
  if (has_d)
    for (std::size_t i = 0; i < fc.levels[s - 1].size(); ++i)
      if (fc.levels[s - 1][i] < p + r) bad_rows.push_back(int(i));
  FpMatrix mat(fc.prime, bad_rows.size(), srcs.size());
  std::map<int, int> row_of;
  for (std::size_t i = 0; i < bad_rows.size(); ++i) row_of[bad_rows[i]] = int(i);
  if (has_d)
    for (std::size_t c = 0; c < srcs.size(); ++c)
      for (const auto& [row, coef] : fc.boundary[s][srcs[c]]) {
        auto it = row_of.find(row);
        if (it != row_of.end()) mat.add_at(it->second, c, coef);
      }
  std::vector<Vec> basis;
  for (const auto& k : kernel_basis(mat)) {
    Vec full(n, 0);
    for (std::size_t c = 0; c < srcs.size(); ++c) full[srcs[c]] = k[c];
    basis.push_back(std::move(full));
  }
  return basis;
}

Vec apply_boundary(const FilteredComplex& fc, int s, const Vec& x) {
  std::size_t tgt = s >= 1 ? fc.levels[s - 1].size() : 0;
  Vec out(tgt, 0);
  if (s < 1 || s >= int(fc.boundary.size()) || fc.boundary[s].empty()) return out;
  for (std::size_t c = 0; c < x.size(); ++c) {
    if (!x[c]) continue;
    for (const auto& [row, coef] : fc.boundary[s][c])
      out[row] = static_cast<uint8_t>((out[row] + coef * x[c]) % fc.prime);
  }
  return out;
}

}  // namespace

int explicit_page_dim(const FilteredComplex& fc, int r, int s, int level) {
  // E_r^p = Z_r^p / (Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1})
  EchelonSpan zspan(fc.prime, fc.levels[s].size());
  for (const auto& v : z_space(fc, r, s, level)) zspan.insert(v);
  EchelonSpan sub(fc.prime, fc.levels[s].size());
  for (const auto& v : z_space(fc, r - 1, s, level + 1)) sub.insert(v);
  if (s + 1 < int(fc.levels.size()))
    for (const auto& z : z_space(fc, r - 1, s + 1, level - r + 1))
      sub.insert(apply_boundary(fc, s + 1, z));
  return int(zspan.size() - sub.size());
}

int explicit_einf_dim(const FilteredComplex& fc, int s, int level) {
  int big = 1;
  for (const auto& ls : fc.levels)
    for (int l : ls) big = std::max(big, l + 2);
  return explicit_page_dim(fc, 2 * big, s, level);
}

// ---------------------------------------------------------------------------
// bar complex

namespace {

struct BarSlice {
  struct Slot {
    std::vector<int> alg;  // global positive-basis indices, leftmost factor first
    int mod;               // module global index
    int level;             // module degree
  };
  std::vector<std::vector<Slot>> slots;
  std::vector<std::map<std::pair<std::vector<int>, int>, int>> index;
};

struct BarContext {
  const ModulePresentation* m;
  const Algebra* B;
  std::vector<std::pair<int, int>> pos;        // global positive index -> (deg, idx)
  std::map<std::pair<int, int>, int> pos_idx;  // (deg, idx) -> global

  BarContext(const ModulePresentation& mod, const Algebra& alg) : m(&mod), B(&alg) {
    for (int d = 1; d <= alg.cap(); ++d)
      for (std::size_t i = 0; i < alg.dim(d); ++i) {
        pos_idx[{d, int(i)}] = int(pos.size());
        pos.push_back({d, int(i)});
      }
  }

  // module action of a positive algebra basis element; empty = zero above the
  // truncation (the bar complex computes Tor of the truncated module)
  Vec act(int posidx, int deg, const Vec& v) const {
    auto [ad, ai] = pos[posidx];
    if (deg + ad > m->truncation) return Vec{};
    return m->act_words(B->basis(ad)[ai].words, deg, v);
  }
};

BarSlice build_slice(const BarContext& ctx, int s_top, int t, std::size_t cap) {
  BarSlice sl;
  sl.slots.resize(s_top + 1);
  sl.index.resize(s_top + 1);
  const ModulePresentation& m = *ctx.m;
  for (int s = 0; s <= s_top; ++s) {
    for (int n = std::min(t, m.truncation); n >= 0; --n) {
      if (m.dim(n) == 0) continue;
      int rest = t - n;
      std::vector<int> tuple;
      std::function<void(int, int)> rec = [&](int left, int depth) {
        if (depth == s) {
          if (left != 0) return;
          for (int mi : m.by_degree[n]) {
            sl.index[s][{tuple, mi}] = int(sl.slots[s].size());
            sl.slots[s].push_back({tuple, mi, n});
            if (sl.slots[s].size() > cap)
              throw SizeCapError("bar complex graded piece exceeds the size cap at (s=" +
                                 std::to_string(s) + ", t=" + std::to_string(t) +
                                 "): over " + std::to_string(cap));
          }
          return;
        }
        int remaining = s - depth - 1;
        for (int d = 1; d + remaining <= left && d <= ctx.B->cap(); ++d) {
          for (std::size_t i = 0; i < ctx.B->dim(d); ++i) {
            tuple.push_back(ctx.pos_idx.at({d, int(i)}));
            rec(left - d, depth + 1);
            tuple.pop_back();
          }
        }
      };
      rec(rest, 0);
    }
  }
  return sl;
}

FilteredComplex bar_filtered_complex(const BarContext& ctx, const BarSlice& sl) {
  const ModulePresentation& m = *ctx.m;
  const Algebra& B = *ctx.B;
  FilteredComplex fc;
  fc.prime = m.prime;
  fc.levels.resize(sl.slots.size());
  fc.boundary.resize(sl.slots.size());
  for (std::size_t s = 0; s < sl.slots.size(); ++s)
    for (const auto& slot : sl.slots[s]) fc.levels[s].push_back(slot.level);
  for (std::size_t s = 1; s < sl.slots.size(); ++s) {
    fc.boundary[s].resize(sl.slots[s].size());
    for (std::size_t j = 0; j < sl.slots[s].size(); ++j) {
      const auto& slot = sl.slots[s][j];
      std::map<int, int> acc;
      // merge faces d_i (1 <= i <= s-1), simplicial sign (-1)^i
      for (std::size_t i = 0; i + 1 < slot.alg.size(); ++i) {
        auto [d1, i1] = ctx.pos[slot.alg[i]];
        auto [d2, i2] = ctx.pos[slot.alg[i + 1]];
        const Vec& prod = B.mult(d1, i1, d2, i2);
        int sign = (i + 1) % 2 ? -1 : 1;
        for (std::size_t k = 0; k < prod.size(); ++k) {
          if (!prod[k]) continue;
          std::vector<int> tuple;
          tuple.reserve(slot.alg.size() - 1);
          for (std::size_t a = 0; a < slot.alg.size(); ++a) {
            if (a == i) {
              tuple.push_back(ctx.pos_idx.at({d1 + d2, int(k)}));
              ++a;
              continue;
            }
            tuple.push_back(slot.alg[a]);
          }
          auto it = sl.index[s - 1].find({tuple, slot.mod});
          if (it == sl.index[s - 1].end())
            throw std::runtime_error("bar boundary: missing merge target");
          acc[it->second] += sign * prod[k];
        }
      }
      // action face d_s, sign (-1)^s
      {
        auto [ad, ai] = ctx.pos[slot.alg.back()];
        (void)ai;
        int n = m.basis[slot.mod].degree;
        Vec unit(m.dim(n), 0);
        unit[m.local_index(slot.mod)] = 1;
        Vec img = ctx.act(slot.alg.back(), n, unit);
        int sign = slot.alg.size() % 2 ? -1 : 1;
        if (!img.empty()) {
          std::vector<int> tuple(slot.alg.begin(), slot.alg.end() - 1);
          for (std::size_t k = 0; k < img.size(); ++k) {
            if (!img[k]) continue;
            int tgt_mod = m.by_degree[n + ad][k];
            auto it = sl.index[s - 1].find({tuple, tgt_mod});
            if (it == sl.index[s - 1].end())
              throw std::runtime_error("bar boundary: missing action target");
            acc[it->second] += sign * img[k];
          }
        }
      }
      for (const auto& [tgt, c] : acc) {
        int cc = ((c % m.prime) + m.prime) % m.prime;
        if (cc) fc.boundary[s][j].emplace_back(tgt, static_cast<uint8_t>(cc));
      }
    }
  }
  return fc;
}

}  // namespace

FilteredComplex bar_slice_complex(const ModulePresentation& m, AlgKind subalgebra, int s_top,
                                  int t, std::size_t size_cap) {
  const Algebra& B = Algebra::get(subalgebra, t);
  BarContext ctx(m, B);
  BarSlice sl = build_slice(ctx, s_top, t, size_cap);
  return bar_filtered_complex(ctx, sl);
}

TorTable bar_homology(const ModulePresentation& m, AlgKind subalgebra, int s_max, int t_max,
                      std::size_t size_cap) {
  if (alg_prime(subalgebra) != m.prime)
    throw std::invalid_argument("bar_homology: module prime does not match subalgebra");
  const Algebra& B = Algebra::get(subalgebra, t_max);
  BarContext ctx(m, B);
  TorTable tab;
  tab.prime = m.prime;
  tab.subalgebra = subalgebra;
  tab.s_max = s_max;
  tab.t_max = t_max;
  tab.reliable_t = std::min(t_max, m.truncation);
  for (int t = 0; t <= t_max; ++t) {
    BarSlice sl = build_slice(ctx, s_max + 1, t, size_cap);
    FilteredComplex fc = bar_filtered_complex(ctx, sl);
    FilteredPairs pr = reduce_filtered(fc);
    for (int s = 0; s <= s_max; ++s) {
      int dim = int(sl.slots[s].size());
      dim -= int(pr.pairs[s + 1].size());
      if (s >= 1) dim -= int(pr.pairs[s].size());
      if (dim) tab.dims[{s, t}] = dim;
    }
  }
  return tab;
}

std::string tor_class_name(AlgKind k, int s, int m, int index) {
  auto pow = [](const std::string& base, int e) -> std::string {
    if (e <= 0) return "";
    if (e == 1) return base + " ";
    return base + "^" + std::to_string(e) + " ";
  };
  std::string name;
  if (k == AlgKind::A2) {
    if (m == 0) name = s == 0 ? "1" : (s == 1 ? "h0" : "h0^" + std::to_string(s));
    if (m == 1 && s == 1) name = "h1";
    if (m == 2 && s == 2) name = "h1^2";
    if (m == 3 && s >= 1) name = pow("h0", s - 1) + "h2";
    if (m == 6 && s == 2) name = "h2^2";
    if (m == 8 && s == 3) name = "c0";
    if (m == 8 && s >= 4) name = pow("h0", s - 4) + "w";
    if (m == 9 && s == 4) name = "h1 c0";
    if (m == 9 && s == 5) name = "h1 w";
    if (m == 10 && s == 6) name = "h1^2 w";
    if (m == 11 && s >= 5) name = pow("h0", s - 5) + "h2 w";
    if (m == 12 && s >= 3) name = pow("h0", s - 3) + "t";
    if (m == 14 && s >= 4) name = pow("h0", s - 4) + "d0";
  } else if (k == AlgKind::A1) {
    if (m == 0) name = s == 0 ? "1" : (s == 1 ? "h0" : "h0^" + std::to_string(s));
    if (m == 1 && s == 1) name = "h1";
    if (m == 2 && s == 2) name = "h1^2";
    if (m == 4 && s >= 3) name = pow("h0", s - 3) + "v";
    if (m == 8 && s >= 4) name = pow("h0", s - 4) + "w";
    if (m == 9 && s == 5) name = "h1 w";
    if (m == 10 && s == 6) name = "h1^2 w";
  } else if (k == AlgKind::A3) {
    if (m == 0) name = s == 0 ? "1" : (s == 1 ? "a0" : "a0^" + std::to_string(s));
    if (m == 3 && s == 1) name = "h10";
    if (m == 11 && s == 1) name = "h11";
    if (m == 7 && s == 2) name = "P0h0";
    if (m == 10 && s == 2) name = "b0";
    if (m == 11 && s == 2) name = "a0 h11";
    if (m == 10 && s == 3) name = "a0 b0";
    if (m == 11 && s == 3) name = "a0^2 h11";
    if (m == 13 && s == 3) name = "b0 h10";
  }
  if (name.empty()) name = "e(" + std::to_string(s) + "," + std::to_string(m) + ")";
  if (index > 0) name += "[" + std::to_string(index) + "]";
  return name;
}

int AahssPages::dim(int r, int s, int m, int n) const {
  auto it = cells.find({s, m, n});
  if (it == cells.end()) return 0;
  int d = it->second.e1;
  for (const auto& [gap, rank] : it->second.out)
    if (r < 0 || gap < r) d -= rank;
  for (const auto& [gap, rank] : it->second.in)
    if (r < 0 || gap < r) d -= rank;
  return d;
}

int AahssPages::drank(int r, int s, int m, int n) const {
  auto it = cells.find({s, m, n});
  if (it == cells.end()) return 0;
  int d = 0;
  for (const auto& [gap, rank] : it->second.out)
    if (gap == r) d += rank;
  return d;
}

bool AahssPages::killed_at_page(int n, int r, const Vec& cls, const ModulePresentation& m) const {
  EchelonSpan span(prime, m.dim(n));
  auto it = killed0.find(n);
  if (it != killed0.end())
    for (const auto& [gap, v] : it->second)
      if (r < 0 || gap < r) span.insert(v);
  return span.contains(cls);
}

AahssPages aahss_pages(const ModulePresentation& m, AlgKind subalgebra, int s_max, int t_max,
                       std::size_t size_cap) {
  const Algebra& B = Algebra::get(subalgebra, t_max);
  BarContext ctx(m, B);
  AahssPages out;
  out.prime = m.prime;
  out.subalgebra = subalgebra;
  out.s_max = s_max;
  out.t_max = t_max;
  out.reliable_t = std::min(t_max, m.truncation);
  out.tor = bar_homology(m, subalgebra, s_max, t_max, size_cap);
  TorTable triv = bar_homology(trivial_module(m.prime), subalgebra, s_max + 1, t_max, size_cap);

  for (int t = 0; t <= t_max; ++t) {
    BarSlice sl = build_slice(ctx, s_max + 1, t, size_cap);
    FilteredComplex fc = bar_filtered_complex(ctx, sl);
    FilteredPairs pr = reduce_filtered(fc, {1});
    auto cell_of = [&](int s, int n) -> AahssPages::Cell& {
      int mm = t - s - n;
      auto key = std::make_tuple(s, mm, n);
      auto it = out.cells.find(key);
      if (it == out.cells.end()) {
        AahssPages::Cell c;
        c.s = s;
        c.m = mm;
        c.n = n;
        it = out.cells.emplace(key, std::move(c)).first;
      }
      return it->second;
    };
    for (int s = 0; s <= s_max; ++s)
      for (const auto& slot : sl.slots[s]) cell_of(s, slot.level).e1 += 1;
    for (int s = 1; s <= s_max + 1; ++s) {
      for (const auto& p : pr.pairs[s]) {
        int a = fc.levels[s][p.src];
        int b = fc.levels[s - 1][p.tgt];
        int gap = b - a;
        if (gap == 0) {
          if (s <= s_max) cell_of(s, a).e1 -= 1;
          if (s - 1 <= s_max) cell_of(s - 1, b).e1 -= 1;
          continue;
        }
        if (s <= s_max) {
          auto& c = cell_of(s, a);
          bool found = false;
          for (auto& [g, r] : c.out)
            if (g == gap) {
              ++r;
              found = true;
              break;
            }
          if (!found) c.out.emplace_back(gap, 1);
        }
        if (s - 1 <= s_max) {
          auto& c = cell_of(s - 1, b);
          bool found = false;
          for (auto& [g, r] : c.in)
            if (g == gap) {
              ++r;
              found = true;
              break;
            }
          if (!found) c.in.emplace_back(gap, 1);
        }
      }
    }
    // survivor data at s = 0
    for (const auto& p : pr.pairs[1]) {
      int a = fc.levels[1][p.src];
      int b = fc.levels[0][p.tgt];
      if (b == a) continue;
      Vec part(m.dim(b), 0);
      const Vec& red = pr.reduced[1][p.src];
      for (std::size_t r = 0; r < red.size(); ++r) {
        if (!red[r]) continue;
        const auto& slot = sl.slots[0][r];
        if (slot.level != b) continue;
        part[m.local_index(slot.mod)] = red[r];
      }
      out.killed0[b].emplace_back(b - a, std::move(part));
    }
  }
  // E_1 labels cross-checked against the trivial-module Tor chart
  for (auto& [key, cell] : out.cells) {
    auto [s, mm, n] = key;
    int tor_dim = triv.dim(s, s + mm);
    int expect = tor_dim * int(m.dim(n));
    if (cell.e1 != expect)
      throw std::runtime_error("aahss: E1 mismatch at (" + std::to_string(s) + "," +
                               std::to_string(mm) + "," + std::to_string(n) + "): pairing " +
                               std::to_string(cell.e1) + " vs Tor x N " + std::to_string(expect));
    for (int i = 0; i < tor_dim; ++i)
      for (int mi : m.by_degree[n]) {
        std::string tn = tor_class_name(subalgebra, s, mm, tor_dim > 1 ? i : 0);
        cell.labels.push_back(tn == "1" ? m.basis[mi].name : tn + " " + m.basis[mi].name);
      }
  }
  // convergence: per-(s, stem) E_inf totals equal the Tor dims
  for (int s = 0; s <= s_max; ++s)
    for (int stem = 0; stem + s <= t_max; ++stem) {
      int total = 0;
      for (int n = 0; n <= stem; ++n) total += out.dim(-1, s, stem - n, n);
      if (total != out.tor.dim(s, s + stem))
        throw std::runtime_error("aahss: E_inf totals disagree with Tor at (s=" +
                                 std::to_string(s) + ", stem=" + std::to_string(stem) + ")");
    }
  return out;
}

std::string pages_tsv(const AahssPages& p) {
  std::ostringstream os;
  os << "# aahss prime=" << p.prime << " subalgebra=" << alg_name(p.subalgebra)
     << " smax=" << p.s_max << " tmax=" << p.t_max << " reliable_t=" << p.reliable_t << "\n";
  os << "r\ts\tm\tn\tdim\tlabels\n";
  int max_gap = 1;
  for (const auto& [key, cell] : p.cells) {
    (void)key;
    for (const auto& [g, r] : cell.out) {
      (void)r;
      max_gap = std::max(max_gap, g);
    }
  }
  for (int r = 1; r <= max_gap + 1; ++r)
    for (const auto& [key, cell] : p.cells) {
      auto [s, m, n] = key;
      int d = p.dim(r, s, m, n);
      if (!d) continue;
      os << r << "\t" << s << "\t" << m << "\t" << n << "\t" << d << "\t";
      if (r == 1)
        for (std::size_t i = 0; i < cell.labels.size(); ++i)
          os << (i ? "," : "") << cell.labels[i];
      else
        os << "-";
      os << "\n";
    }
  for (const auto& [key, cell] : p.cells) {
    (void)cell;
    auto [s, m, n] = key;
    int d = p.dim(-1, s, m, n);
    if (!d) continue;
    os << "inf\t" << s << "\t" << m << "\t" << n << "\t" << d << "\t-\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// mod-3 ledger

const CoeffChart& mo8_coeff_chart() {
  static const CoeffChart chart = [] {
    CoeffChart c;
    // name, stem, s_min, s_max (-1 = tower), a0_quotient row, h10_quotient row
    c.rows = {
        {"a0^%s", 0, 0, -1, 0, -1},       // 0
        {"a0^%s m8", 8, 0, -1, 1, -1},    // 1
        {"h10", 3, 1, 1, -1, 0},          // 2
        {"h10 m8", 11, 1, 1, -1, 1},      // 3
        {"P0h0", 7, 2, 2, -1, -1},        // 4
        {"b0", 10, 2, 2, -1, -1},         // 5
        {"a0 b0", 10, 3, 3, 5, 4},        // 6  (= h10 P0h0)
        {"a0^%s m12", 12, 3, -1, 7, -1},  // 7
        {"b0 h10", 13, 3, 3, -1, 5},      // 8
    };
    c.annotations = "recorded rule: d2(m8) = P0h0 U in the Adams spectral sequence";
    return c;
  }();
  return chart;
}

namespace {

std::string ledger_name(const CoeffChart& c, int row, int s) {
  std::string pat = c.rows[row].name;
  auto pos = pat.find("%s");
  if (pos == std::string::npos) return pat;
  // the tower exponent at filtration s is s itself for the bundled rows
  std::string p = s == 0 ? "" : (s == 1 ? "a0" : "a0^" + std::to_string(s));
  std::string tail = pat.substr(pos + 2);
  if (!tail.empty() && tail[0] == ' ' && p.empty()) tail = tail.substr(1);
  return p + tail;
}

}  // namespace

int LedgerPages::dim(int r, int s, int m, int n) const {
  auto it = cells.find({s, m, n});
  if (it == cells.end()) return 0;
  int idx = std::min<int>(r, int(it->second.page_dims.size())) - 1;
  if (idx < 0) return 0;
  return it->second.page_dims[idx];
}

int LedgerPages::einf(int s, int m, int n) const { return dim(5, s, m, n); }

LedgerPages aahss_mod3_ledger(const ModulePresentation& meta3, const CoeffChart& chart,
                              int s_window, int mn_min, int mn_max) {
  if (meta3.prime != 3) throw std::invalid_argument("mod-3 ledger needs a mod-3 module");
  (void)mn_min;
  LedgerPages out;
  auto classes_at = [&](int s, int stem) {
    std::vector<int> rows;
    for (std::size_t r = 0; r < chart.rows.size(); ++r) {
      const auto& row = chart.rows[r];
      if (row.stem != stem || s < row.s_min || (row.s_max >= 0 && s > row.s_max)) continue;
      rows.push_back(int(r));
    }
    return rows;
  };
  struct CellState {
    std::vector<std::pair<int, int>> basis;  // (chart row, module global index)
    std::vector<Vec> Z, B;                   // current page subquotient
    bool unknown = false;
  };
  std::map<std::tuple<int, int, int>, CellState> state;
  for (int s = 0; s <= s_window + 1; ++s)
    for (int mm = 0; mm <= mn_max + 1; ++mm)
      for (int n = 0; n <= std::min(meta3.truncation, mn_max + 1 - mm); ++n) {
        auto rows = classes_at(s, mm);
        if (rows.empty() || meta3.dim(n) == 0) continue;
        CellState cs;
        for (int r : rows)
          for (int mi : meta3.by_degree[n]) cs.basis.emplace_back(r, mi);
        for (std::size_t i = 0; i < cs.basis.size(); ++i) {
          Vec unit(cs.basis.size(), 0);
          unit[i] = 1;
          cs.Z.push_back(unit);
        }
        state[{s, mm, n}] = std::move(cs);
      }

  auto cell_dim = [](const CellState& cs) {
    if (cs.basis.empty()) return 0;
    EchelonSpan zs(3, cs.basis.size()), bs(3, cs.basis.size());
    for (const auto& v : cs.Z) zs.insert(v);
    for (const auto& v : cs.B) bs.insert(v);
    return int(zs.size() - bs.size());
  };

  // rule differential d_r with r = |action|: (s,m,n) -> (s-1, m+1-r, n+r)
  auto apply_rule = [&](std::function<int(int, int)> pair_row, const std::string& action_key) {
    int gd = meta3.gen_degree_of(action_key);
    struct Update {
      std::tuple<int, int, int> src_key;
      std::tuple<int, int, int> tgt_key;
      bool tgt_exists;
      FpMatrix mat;  // E1(src) -> E1(tgt)
    };
    std::vector<Update> updates;
    std::vector<std::tuple<int, int, int>> pending_unknown;
    for (auto& [key, src] : state) {
      auto [s, mm, n] = key;
      bool supported = false;
      for (const auto& [row, mi] : src.basis) {
        (void)mi;
        if (pair_row(row, s) >= 0) supported = true;
      }
      if (!supported) continue;
      int ts = s - 1, tm = mm + 1 - gd, tn = n + gd;
      if (tn > meta3.truncation) {
        pending_unknown.push_back(key);
        continue;
      }
      auto tit = state.find({ts, tm, tn});
      bool texists = tit != state.end();
      std::size_t tdim = texists ? tit->second.basis.size() : 0;
      FpMatrix mat(3, tdim, src.basis.size());
      for (std::size_t c = 0; c < src.basis.size(); ++c) {
        auto [row, mi] = src.basis[c];
        int qrow = pair_row(row, s);
        if (qrow < 0) continue;
        int srcdeg = meta3.basis[mi].degree;
        Vec unit(meta3.dim(srcdeg), 0);
        unit[meta3.local_index(mi)] = 1;
        Vec img = meta3.act_gen(action_key, srcdeg, unit);
        for (std::size_t k = 0; k < img.size(); ++k) {
          if (!img[k] || !texists) continue;
          int tmi = meta3.by_degree[srcdeg + gd][k];
          for (std::size_t tc = 0; tc < tit->second.basis.size(); ++tc)
            if (tit->second.basis[tc] == std::make_pair(qrow, tmi)) mat.add_at(tc, c, img[k]);
        }
      }
      updates.push_back({key, {ts, tm, tn}, texists, std::move(mat)});
    }
    // snapshot target killed spans for well-definedness and kernels
    std::map<std::tuple<int, int, int>, std::vector<Vec>> old_B;
    for (const auto& [key, cs] : state) old_B[key] = cs.B;
    // kernels on sources
    for (auto& up : updates) {
      auto& src = state.at(up.src_key);
      EchelonSpan bspan(3, std::max<std::size_t>(1, up.mat.rows()));
      if (up.tgt_exists)
        for (const auto& b : old_B.at(up.tgt_key))
          bspan.insert(b);
      // the rule must descend to the page: images of killed classes stay killed
      for (const auto& b : src.B) {
        Vec img = up.mat.apply(b);
        if (up.mat.rows() && !bspan.contains(img))
          throw std::runtime_error("mod-3 ledger: rule differential not defined on the page");
      }
      FpMatrix zmat(3, std::max<std::size_t>(1, up.mat.rows()), src.Z.size());
      for (std::size_t c = 0; c < src.Z.size(); ++c) {
        Vec img = up.mat.apply(src.Z[c]);
        Vec red = up.mat.rows() ? bspan.reduce(img) : Vec(1, 0);
        for (std::size_t r = 0; r < red.size(); ++r)
          if (red[r]) zmat.set(r, c, red[r]);
      }
      std::vector<Vec> znew;
      for (const auto& kc : kernel_basis(zmat)) {
        Vec v(src.basis.size(), 0);
        for (std::size_t c = 0; c < kc.size(); ++c)
          if (kc[c])
            for (std::size_t r = 0; r < v.size(); ++r)
              v[r] = static_cast<uint8_t>((v[r] + kc[c] * src.Z[c][r]) % 3);
        znew.push_back(std::move(v));
      }
      // record images before replacing Z
      if (up.tgt_exists) {
        auto& tgt = state.at(up.tgt_key);
        for (const auto& z : src.Z) tgt.B.push_back(up.mat.apply(z));
      }
      src.Z = std::move(znew);
      for (const auto& b : src.B) src.Z.push_back(b);
    }
    for (const auto& key : pending_unknown)
      if (cell_dim(state.at(key)) > 0) state.at(key).unknown = true;
  };

  auto record_dims = [&](int page) {
    for (auto& [key, cs] : state) {
      auto& entry = out.cells[key];
      int d = cell_dim(cs);
      while (int(entry.page_dims.size()) < page) entry.page_dims.push_back(d);
      entry.unknown_beyond = cs.unknown;
    }
  };

  for (auto& [key, cs] : state) {
    auto [s, mm, n] = key;
    (void)mm;
    (void)n;
    auto& entry = out.cells[key];
    for (const auto& [row, mi] : cs.basis) {
      std::string cn = ledger_name(chart, row, s);
      entry.labels.push_back(cn.empty() ? meta3.basis[mi].name : cn + " " + meta3.basis[mi].name);
    }
  }
  record_dims(1);
  apply_rule(
      [&](int row, int s) {
        const auto& r = chart.rows[row];
        if (r.a0_quotient < 0) return -1;
        if (r.a0_quotient == row) return s - 1 >= r.s_min ? row : -1;  // tower
        return r.a0_quotient;
      },
      "b");
  record_dims(4);
  apply_rule([&](int row, int s) { (void)s; return chart.rows[row].h10_quotient; }, "P1");
  record_dims(5);

  for (auto& [key, cs] : state) {
    auto& entry = out.cells[key];
    entry.final_cycles = cs.Z;
    entry.final_killed = cs.B;
    EchelonSpan zspan(3, std::max<std::size_t>(1, cs.basis.size()));
    for (const auto& z : cs.Z) zspan.insert(z);
    EchelonSpan seen(3, std::max<std::size_t>(1, cs.basis.size()));
    for (const auto& b : cs.B) seen.insert(b);
    for (std::size_t i = 0; i < cs.basis.size(); ++i) {
      Vec unit(cs.basis.size(), 0);
      unit[i] = 1;
      if (!zspan.contains(unit) || seen.contains(unit)) continue;
      seen.insert(unit);
      entry.einf_labels.push_back(entry.labels[i]);
    }
  }
  return out;
}

bool LedgerPages::Entry::alive(std::size_t basis_index) const {
  if (basis_index >= labels.size()) return false;
  Vec unit(labels.size(), 0);
  unit[basis_index] = 1;
  EchelonSpan zspan(3, labels.size()), bspan(3, labels.size());
  for (const auto& z : final_cycles) zspan.insert(z);
  for (const auto& b : final_killed) bspan.insert(b);
  return zspan.contains(unit) && !bspan.contains(unit);
}

std::string ledger_tsv(const LedgerPages& p) {
  std::ostringstream os;
  os << "r\ts\tm\tn\tdim\tlabels\n";
  for (int r = 1; r <= 5; ++r)
    for (const auto& [key, e] : p.cells) {
      auto [s, m, n] = key;
      int d = p.dim(r, s, m, n);
      if (!d) continue;
      os << r << "\t" << s << "\t" << m << "\t" << n << "\t" << d << "\t";
      if (r == 1)
        for (std::size_t i = 0; i < e.labels.size(); ++i) os << (i ? "," : "") << e.labels[i];
      else
        os << "-";
      if (e.unknown_beyond && r >= 4) os << "\t(unknown beyond truncation)";
      os << "\n";
    }
  for (const auto& [key, e] : p.cells) {
    auto [s, m, n] = key;
    int d = p.einf(s, m, n);
    if (!d && !e.unknown_beyond) continue;
    os << "inf\t" << s << "\t" << m << "\t" << n << "\t" << d << "\t";
    for (std::size_t i = 0; i < e.einf_labels.size(); ++i)
      os << (i ? "," : "") << e.einf_labels[i];
    if (e.einf_labels.empty()) os << "-";
    if (e.unknown_beyond) os << "\t(unknown beyond truncation)";
    os << "\n";
  }
  return os.str();
}

}  // namespace bzx
