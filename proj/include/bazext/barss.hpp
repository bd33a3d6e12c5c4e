#pragma once

// The reduced bar complex B(N) = sum_s Abar^{(x)s} (x) N, its homology (an
// independent Tor oracle), and the spectral sequence of its module-degree
// filtration -- the algebraic Atiyah-Hirzebruch spectral sequence.
//
// Index conventions follow the exact couple: E_1^{s,m,n} = Tor_{s,s+m}(k,k)
// (x) N^n with t = s + m + n, and d_r : E_r^{s,m,n} -> E_r^{s-1,m+1-r,n+r}.
// Worked example (two-step filtration of the length-one complex k --id--> k,
// source at level 0, target at level 1): E_1 has one slot at each level, the
// boundary pairs them with level gap 1, so both survive to page 1 and die on
// d_1 -- a pair with gap g carries exactly the page-g differential.
//
// Pages are computed from the canonical pairing of the filtered complex
// (column reduction in filtration order; the pair multiset is the Barannikov
// normal form, which determines every page over a field):
//   dim E_r(s, n) = #slots(s, n) - #pairs out of level n with gap < r
//                               - #pairs into level n with gap < r
//   rank d_r out of (s, n) = #pairs with source level n and gap exactly r.

#include <map>
#include <string>
#include <vector>

#include "bazext/modbuild.hpp"
#include "bazext/steenrod.hpp"

namespace bzx {

struct SizeCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// generic filtered chain complex over F_p (one total degree at a time)

struct FilteredComplex {
  int prime = 2;
  // slot levels per homological degree s = 0..S (descending level order
  // required within each s)
  std::vector<std::vector<int>> levels;
  // boundary[s]: sparse columns of d : C_s -> C_{s-1}, s >= 1
  std::vector<std::vector<std::vector<std::pair<int, uint8_t>>>> boundary;
};

struct FilteredPairs {
  struct Pair {
    int src, tgt;  // slot indices in C_s and C_{s-1}
  };
  std::vector<std::vector<Pair>> pairs;  // per s >= 1
  // reduced boundary columns (packed mod 2 / byte mod 3) for survivor queries
  std::vector<std::vector<Vec>> reduced;  // per s >= 1, per column (may be empty)
};

// canonical pairing by filtration-compatible column reduction;
// keep_reduced: retain reduced columns for the listed s values
FilteredPairs reduce_filtered(const FilteredComplex& fc, const std::vector<int>& keep_reduced = {});

// page dims straight from the Z/B subspace formulas (small complexes only;
// used to cross-check the pairing)
int explicit_page_dim(const FilteredComplex& fc, int r, int s, int level);
int explicit_einf_dim(const FilteredComplex& fc, int s, int level);

// ---------------------------------------------------------------------------

struct TorTable {
  int prime = 2;
  AlgKind subalgebra = AlgKind::A2;
  int s_max = 0, t_max = 0, reliable_t = 0;
  std::map<std::pair<int, int>, int> dims;  // (s,t) -> dim, zeros omitted
  int dim(int s, int t) const {
    auto it = dims.find({s, t});
    return it == dims.end() ? 0 : it->second;
  }
};

// homology of the reduced bar complex; per-graded-piece basis size capped
TorTable bar_homology(const ModulePresentation& m, AlgKind subalgebra, int s_max, int t_max,
                      std::size_t size_cap = 200000);

// one total-degree slice of the reduced bar complex as a filtered complex
// (diagnostic surface; the slots are sorted by descending module degree)
FilteredComplex bar_slice_complex(const ModulePresentation& m, AlgKind subalgebra, int s_top,
                                  int t, std::size_t size_cap = 200000);

// Tor-class label for the trivial-module chart position (s, stem m)
std::string tor_class_name(AlgKind k, int s, int m, int index);

struct AahssPages {
  int prime = 2;
  AlgKind subalgebra = AlgKind::A2;
  int s_max = 0, t_max = 0;
  int reliable_t = 0;  // cells with t beyond this describe the truncated module

  struct Cell {
    int s, m, n;
    int e1 = 0;                                 // dim E_1
    std::vector<std::pair<int, int>> out, in;   // (gap, rank)
    std::vector<std::string> labels;            // E_1 labels
  };
  std::map<std::tuple<int, int, int>, Cell> cells;  // (s,m,n)

  TorTable tor;  // convergence target (same truncated module)

  // r >= 1; r < 0 means E_infinity
  int dim(int r, int s, int m, int n) const;
  int drank(int r, int s, int m, int n) const;  // rank of d_r out of (s,m,n)

  // killed subspaces at s = 0: for level n, the classes of gr_n killed by a
  // differential of gap <= g are spanned by {v : (gap, v) with gap <= g}
  std::map<int, std::vector<std::pair<int, Vec>>> killed0;
  bool killed_at_page(int n, int r, const Vec& cls, const ModulePresentation& m) const;
};

AahssPages aahss_pages(const ModulePresentation& m, AlgKind subalgebra, int s_max, int t_max,
                       std::size_t size_cap = 200000);

std::string pages_tsv(const AahssPages& p);

// ---------------------------------------------------------------------------
// mod-3 ledger: coefficient chart (fixture) tensor module degrees, with the
// beta-induced d_1 (a0-pairing) and the P1-induced d_4 (h10-pairing)

struct CoeffChart {
  struct Row {
    std::string name;       // printf-style with %s for the a0 power when towered
    int stem;               // t - s
    int s_min;              // first s where the row lives
    int s_max;              // inclusive; -1 = unbounded tower
    int a0_quotient;        // row index of the a0-quotient (same tower allowed), -1 none
    int h10_quotient;       // row index reached by stripping one h10, -1 none
  };
  std::vector<Row> rows;
  std::string annotations;  // carried as data (e.g. the recorded Adams d2 rule)
};

// the bundled Ext_A(H*(MO<8>; F_3)) chart fixture
const CoeffChart& mo8_coeff_chart();

struct LedgerPages {
  struct Entry {
    std::vector<std::string> labels;  // E_1 labels
    std::vector<int> page_dims;       // dims at pages 1..5 (d_1 then d_4 applied)
    bool unknown_beyond = false;      // a rule differential leaves the known range
    std::vector<std::string> einf_labels;       // surviving labels where exact
    std::vector<Vec> final_cycles, final_killed;  // subquotient over E_1 coordinates
    bool alive(std::size_t basis_index) const;
  };
  std::map<std::tuple<int, int, int>, Entry> cells;  // (s, m, n)
  int dim(int r, int s, int m, int n) const;
  int einf(int s, int m, int n) const;
};

LedgerPages aahss_mod3_ledger(const ModulePresentation& meta3, const CoeffChart& chart, int s_window,
                              int mn_min = 0, int mn_max = 14);

std::string ledger_tsv(const LedgerPages& p);

}  // namespace bzx
