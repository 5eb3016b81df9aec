#pragma once

// Truncated operator wave-function space.  States |n1,n2> are grouped into
// sectors F_n (n = n1 + n2, dimension n+1, ordered by decreasing n1); basis
// cells are the matrix units E[(m,i),(n,j)] mapping sector-n state j to
// sector-m state i.  Cells are ordered sectors ascending, row-major within
// each (m,n) block.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fuzzydynsym::fock {

struct FockState {
  int n1 = 0;
  int n2 = 0;
  int sector() const { return n1 + n2; }
};

struct Cell {
  int row_state = 0;  // global state index of |m,i>
  int col_state = 0;  // global state index of |n,j>
  int row_sector = 0;
  int col_sector = 0;
};

inline uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

class OpSpaceBasis {
 public:
  explicit OpSpaceBasis(int n_max) : n_max_(n_max) {
    if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
    // states: sector ascending, n1 decreasing within a sector
    sector_offset_.resize(n_max + 2, 0);
    for (int n = 0; n <= n_max; ++n) {
      sector_offset_[n] = static_cast<int>(states_.size());
      for (int n1 = n; n1 >= 0; --n1) states_.push_back({n1, n - n1});
    }
    sector_offset_[n_max + 1] = static_cast<int>(states_.size());
    D_ = static_cast<int>(states_.size());

    cells_.reserve(static_cast<std::size_t>(D_) * D_);
    cell_index_.assign(static_cast<std::size_t>(D_) * D_, -1);
    for (int m = 0; m <= n_max; ++m)
      for (int n = 0; n <= n_max; ++n)
        for (int i = 0; i <= m; ++i)
          for (int j = 0; j <= n; ++j) {
            Cell c;
            c.row_state = sector_offset_[m] + i;
            c.col_state = sector_offset_[n] + j;
            c.row_sector = m;
            c.col_sector = n;
            cell_index_[static_cast<std::size_t>(c.row_state) * D_ + c.col_state] =
                static_cast<int>(cells_.size());
            cells_.push_back(c);
          }
  }

  int n_max() const { return n_max_; }
  int state_count() const { return D_; }
  int dim() const { return static_cast<int>(cells_.size()); }

  const FockState& state(int s) const { return states_[s]; }
  int state_index(int n1, int n2) const {
    int n = n1 + n2;
    if (n1 < 0 || n2 < 0 || n > n_max_) return -1;
    return sector_offset_[n] + (n - n1);
  }
  int sector_offset(int n) const { return sector_offset_[n]; }

  const Cell& cell(int c) const { return cells_[c]; }
  int cell_index(int row_state, int col_state) const {
    return cell_index_[static_cast<std::size_t>(row_state) * D_ + col_state];
  }

  bool is_physical(int c) const { return cells_[c].row_sector == cells_[c].col_sector; }
  bool is_interior(int c, int margin) const {
    return cells_[c].row_sector <= n_max_ - margin && cells_[c].col_sector <= n_max_ - margin;
  }

  /// Twice the L3 eigenvalue of a cell (always an integer).
  int two_m(int c) const {
    const Cell& cl = cells_[c];
    const FockState& r = states_[cl.row_state];
    const FockState& co = states_[cl.col_state];
    return (r.n1 - r.n2) - (co.n1 - co.n2);
  }

  std::vector<int> physical_mask() const {
    std::vector<int> out;
    for (int c = 0; c < dim(); ++c)
      if (is_physical(c)) out.push_back(c);
    return out;
  }
  std::vector<int> interior_mask(int margin, bool physical_only = true) const {
    std::vector<int> out;
    for (int c = 0; c < dim(); ++c)
      if (is_interior(c, margin) && (!physical_only || is_physical(c))) out.push_back(c);
    return out;
  }

  /// Hash of the ordered basis description; keys caches and reports.
  uint64_t hash() const {
    std::string desc = "opspace.v1;n_max=" + std::to_string(n_max_) +
                       ";order=sectors-ascending,row-major;states=n1-decreasing";
    return fnv1a64(desc);
  }

 private:
  int n_max_ = 0;
  int D_ = 0;
  std::vector<FockState> states_;
  std::vector<int> sector_offset_;
  std::vector<Cell> cells_;
  std::vector<int> cell_index_;
};

/// Weighted Hilbert-Schmidt geometry: weight 4 pi lambda^3 (n+1) per cell,
/// with n the source (column) sector.
struct GramWeights {
  double lambda = 1.0;

  double weight(const OpSpaceBasis& basis, int c) const {
    constexpr double four_pi = 12.566370614359172;
    return four_pi * lambda * lambda * lambda * (basis.cell(c).col_sector + 1);
  }
};

}  // namespace fuzzydynsym::fock
