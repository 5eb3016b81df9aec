#pragma once

// Sparse matrix representation of ncalg polynomials as superoperators on the
// vectorized truncated operator wave-function space, plus the weighted
// Hilbert-Schmidt inner product and the binary cache format.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "fuzzydynsym/fock_basis.hpp"
#include "fuzzydynsym/ncalg.hpp"

namespace fuzzydynsym::fock {

using Complex = std::complex<double>;
using SparseC = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;

struct SuperMatrix {
  SparseC mat;
  double lambda = 1.0;
  int n_max = 0;
  uint64_t basis_hash = 0;
  bool overflow = false;                 // a raised index exceeded n_max somewhere
  std::vector<uint8_t> overflow_cols;    // columns affected by truncation overflow

  int dim() const { return static_cast<int>(mat.rows()); }
};

namespace detail {

/// Applies one canonical monomial word to the cell (row_state, col_state).
/// Returns false when the result is annihilated or overflows the cutoff
/// (overflowed is set in the latter case only).
inline bool apply_word(const OpSpaceBasis& basis, const ncalg::Word& w, int row_state,
                       int col_state, double& amp, int& out_row, int& out_col, bool& overflowed) {
  FockState r = basis.state(row_state);
  FockState c = basis.state(col_state);
  amp = 1.0;
  overflowed = false;

  auto occ = [](FockState& s, int mode) -> int& { return mode == 1 ? s.n1 : s.n2; };

  // undaggered generators act first (slots 4..7)
  for (int mode = 1; mode <= 2; ++mode) {
    // aL: left multiplication by a_mode lowers the row state
    for (int t = 0; t < w[3 + mode]; ++t) {
      int& o = occ(r, mode);
      if (o == 0) return false;
      amp *= std::sqrt(static_cast<double>(o));
      --o;
    }
    // bR: right multiplication by a_mode raises the column state
    for (int t = 0; t < w[5 + mode]; ++t) {
      int& o = occ(c, mode);
      if (c.sector() + 1 > basis.n_max()) {
        overflowed = true;
        return false;
      }
      amp *= std::sqrt(static_cast<double>(o + 1));
      ++o;
    }
  }
  // daggered generators (slots 0..3)
  for (int mode = 1; mode <= 2; ++mode) {
    // aL^+: raises the row state
    for (int t = 0; t < w[mode - 1]; ++t) {
      int& o = occ(r, mode);
      if (r.sector() + 1 > basis.n_max()) {
        overflowed = true;
        return false;
      }
      amp *= std::sqrt(static_cast<double>(o + 1));
      ++o;
    }
    // bR^+: lowers the column state
    for (int t = 0; t < w[1 + mode]; ++t) {
      int& o = occ(c, mode);
      if (o == 0) return false;
      amp *= std::sqrt(static_cast<double>(o));
      --o;
    }
  }
  out_row = basis.state_index(r.n1, r.n2);
  out_col = basis.state_index(c.n1, c.n2);
  return true;
}

}  // namespace detail

/// Matrix of the superoperator p on the vectorized cell basis at numeric
/// lambda.  a-hat generators act by left ladder multiplication, b-hat by
/// right multiplication.  Truncation overflow is flagged per column, never
/// silently dropped from the metadata.
inline SuperMatrix represent(const ncalg::OperatorPoly& p, const OpSpaceBasis& basis,
                             double lambda) {
  if (lambda <= 0.0) throw std::invalid_argument("lambda must be positive");
  SuperMatrix M;
  M.lambda = lambda;
  M.n_max = basis.n_max();
  M.basis_hash = basis.hash();
  M.overflow_cols.assign(basis.dim(), 0);

  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(basis.dim()) * p.term_count());
  for (int col = 0; col < basis.dim(); ++col) {
    const Cell& cell = basis.cell(col);
    for (const auto& [w, coeff] : p.terms()) {
      double amp;
      int out_row, out_col;
      bool overflowed;
      if (!detail::apply_word(basis, w, cell.row_state, cell.col_state, amp, out_row, out_col,
                              overflowed)) {
        if (overflowed) {
          M.overflow = true;
          M.overflow_cols[col] = 1;
        }
        continue;
      }
      Complex v = coeff.eval(lambda) * amp;
      if (v == Complex{0.0, 0.0}) continue;
      trips.emplace_back(basis.cell_index(out_row, out_col), col, v);
    }
  }
  M.mat.resize(basis.dim(), basis.dim());
  M.mat.setFromTriplets(trips.begin(), trips.end());
  M.mat.makeCompressed();
  return M;
}

/// Representation restricted to a cell mask: only mask columns are applied
/// and only mask rows kept.  For mask-preserving polynomials this equals the
/// restriction of the full representation; a nonzero amplitude landing
/// outside the mask sets *dropped.
inline SparseC represent_masked(const ncalg::OperatorPoly& p, const OpSpaceBasis& basis,
                                double lambda, const std::vector<int>& mask,
                                const std::vector<int>& pos, bool* dropped = nullptr) {
  std::vector<Triplet> trips;
  trips.reserve(mask.size() * p.term_count());
  for (std::size_t k = 0; k < mask.size(); ++k) {
    const Cell& cell = basis.cell(mask[k]);
    for (const auto& [w, coeff] : p.terms()) {
      double amp;
      int out_row, out_col;
      bool overflowed;
      if (!detail::apply_word(basis, w, cell.row_state, cell.col_state, amp, out_row, out_col,
                              overflowed)) {
        if (overflowed && dropped) *dropped = true;
        continue;
      }
      Complex v = coeff.eval(lambda) * amp;
      if (v == Complex{0.0, 0.0}) continue;
      int r = pos[basis.cell_index(out_row, out_col)];
      if (r < 0) {
        if (dropped) *dropped = true;
        continue;
      }
      trips.emplace_back(r, static_cast<int>(k), v);
    }
  }
  SparseC out(static_cast<int>(mask.size()), static_cast<int>(mask.size()));
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

/// Weighted inner product <p1, p2> = sum_cells w |..|; vectors live on the
/// full cell index space.
inline Complex inner_product(const Eigen::VectorXcd& p1, const Eigen::VectorXcd& p2,
                             const OpSpaceBasis& basis, const GramWeights& w) {
  if (p1.size() != p2.size() || p1.size() != basis.dim())
    throw std::invalid_argument("inner_product: dimension mismatch");
  Complex s{0.0, 0.0};
  for (int c = 0; c < basis.dim(); ++c) s += w.weight(basis, c) * std::conj(p1[c]) * p2[c];
  return s;
}

/// Restriction of a SuperMatrix to a sorted cell-index mask (rows and cols).
inline SparseC restrict_to_mask(const SparseC& M, const std::vector<int>& mask) {
  std::vector<int> pos(M.rows(), -1);
  for (std::size_t k = 0; k < mask.size(); ++k) pos[mask[k]] = static_cast<int>(k);
  std::vector<Triplet> trips;
  for (int c : mask) {
    for (SparseC::InnerIterator it(M, c); it; ++it) {
      int r = pos[it.row()];
      if (r >= 0) trips.emplace_back(r, pos[c], it.value());
    }
  }
  SparseC out(static_cast<int>(mask.size()), static_cast<int>(mask.size()));
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

inline std::vector<double> mask_weights(const OpSpaceBasis& basis, const GramWeights& w,
                                        const std::vector<int>& mask) {
  std::vector<double> out(mask.size());
  for (std::size_t k = 0; k < mask.size(); ++k) out[k] = w.weight(basis, mask[k]);
  return out;
}

/// || M - M* ||_F / || M ||_F on the masked block, where M* is the adjoint
/// with respect to the weighted inner product: M* = W^-1 M^H W.
inline double hermitian_check(const SuperMatrix& M, const OpSpaceBasis& basis,
                              const GramWeights& w, const std::vector<int>& mask) {
  SparseC B = restrict_to_mask(M.mat, mask);
  std::vector<double> wt = mask_weights(basis, w, mask);
  const int n = static_cast<int>(mask.size());
  Eigen::VectorXd wv = Eigen::Map<const Eigen::VectorXd>(wt.data(), n);
  // (W^-1 M^H W)_{rc} = conj(M_{cr}) w_c / w_r
  SparseC Bstar = wv.cwiseInverse().asDiagonal() * SparseC(B.adjoint()) * wv.asDiagonal();
  SparseC diff = B - Bstar;
  double den = B.norm();
  if (den == 0.0) return 0.0;
  return diff.norm() / den;
}

// ---------------------------------------------------------------------------
// Cache file format (documented in docs/cache-format.md):
//   magic "FDSMCACH" | version u32 | lambda f64 | n_max u32 | basis hash u64
//   | mask tag (u32 length + bytes) | nnz u64 | triplets (row u32, col u32,
//   re f64, im f64) | payload FNV-1a checksum u64.
// Little-endian IEEE-754 throughout; round-trip is bit-exact.
// ---------------------------------------------------------------------------

enum class CacheStatus { ok, io_error, version_mismatch, hash_mismatch, corrupt_payload };

inline constexpr uint32_t kCacheVersion = 1;
inline constexpr char kCacheMagic[8] = {'F', 'D', 'S', 'M', 'C', 'A', 'C', 'H'};

namespace detail {
inline void fnv_bytes(uint64_t& h, const void* p, std::size_t n) {
  const unsigned char* b = static_cast<const unsigned char*>(p);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= b[i];
    h *= 1099511628211ULL;
  }
}
}  // namespace detail

inline CacheStatus cache_write(const SuperMatrix& M, const std::string& path,
                               const std::string& mask_tag = "full") {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) return CacheStatus::io_error;
  auto put = [&](const void* p, std::size_t n) { f.write(static_cast<const char*>(p), n); };
  put(kCacheMagic, 8);
  uint32_t ver = kCacheVersion;
  put(&ver, 4);
  put(&M.lambda, 8);
  uint32_t nm = static_cast<uint32_t>(M.n_max);
  put(&nm, 4);
  put(&M.basis_hash, 8);
  uint32_t taglen = static_cast<uint32_t>(mask_tag.size());
  put(&taglen, 4);
  put(mask_tag.data(), taglen);

  uint64_t nnz = static_cast<uint64_t>(M.mat.nonZeros());
  put(&nnz, 8);
  uint64_t checksum = 1469598103934665603ULL;
  for (int c = 0; c < M.mat.outerSize(); ++c)
    for (SparseC::InnerIterator it(M.mat, c); it; ++it) {
      uint32_t r = static_cast<uint32_t>(it.row());
      uint32_t cc = static_cast<uint32_t>(it.col());
      double re = it.value().real(), im = it.value().imag();
      put(&r, 4);
      put(&cc, 4);
      put(&re, 8);
      put(&im, 8);
      detail::fnv_bytes(checksum, &r, 4);
      detail::fnv_bytes(checksum, &cc, 4);
      detail::fnv_bytes(checksum, &re, 8);
      detail::fnv_bytes(checksum, &im, 8);
    }
  put(&checksum, 8);
  return f.good() ? CacheStatus::ok : CacheStatus::io_error;
}

inline CacheStatus cache_read(const std::string& path, const OpSpaceBasis& basis, SuperMatrix& M,
                              std::string* mask_tag_out = nullptr) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return CacheStatus::io_error;
  auto get = [&](void* p, std::size_t n) -> bool {
    f.read(static_cast<char*>(p), n);
    return static_cast<std::size_t>(f.gcount()) == n;
  };
  char magic[8];
  if (!get(magic, 8) || std::memcmp(magic, kCacheMagic, 8) != 0)
    return CacheStatus::corrupt_payload;
  uint32_t ver;
  if (!get(&ver, 4)) return CacheStatus::corrupt_payload;
  if (ver != kCacheVersion) return CacheStatus::version_mismatch;
  double lambda;
  uint32_t nm;
  uint64_t hash;
  if (!get(&lambda, 8) || !get(&nm, 4) || !get(&hash, 8)) return CacheStatus::corrupt_payload;
  if (hash != basis.hash() || static_cast<int>(nm) != basis.n_max())
    return CacheStatus::hash_mismatch;
  uint32_t taglen;
  if (!get(&taglen, 4) || taglen > 4096) return CacheStatus::corrupt_payload;
  std::string tag(taglen, '\0');
  if (taglen && !get(tag.data(), taglen)) return CacheStatus::corrupt_payload;
  if (mask_tag_out) *mask_tag_out = tag;

  uint64_t nnz;
  if (!get(&nnz, 8)) return CacheStatus::corrupt_payload;
  std::vector<Triplet> trips;
  trips.reserve(nnz);
  uint64_t checksum = 1469598103934665603ULL;
  for (uint64_t k = 0; k < nnz; ++k) {
    uint32_t r, c;
    double re, im;
    if (!get(&r, 4) || !get(&c, 4) || !get(&re, 8) || !get(&im, 8))
      return CacheStatus::corrupt_payload;
    detail::fnv_bytes(checksum, &r, 4);
    detail::fnv_bytes(checksum, &c, 4);
    detail::fnv_bytes(checksum, &re, 8);
    detail::fnv_bytes(checksum, &im, 8);
    if (r >= static_cast<uint32_t>(basis.dim()) || c >= static_cast<uint32_t>(basis.dim()))
      return CacheStatus::corrupt_payload;
    trips.emplace_back(r, c, Complex{re, im});
  }
  uint64_t stored;
  if (!get(&stored, 8) || stored != checksum) return CacheStatus::corrupt_payload;

  M.lambda = lambda;
  M.n_max = static_cast<int>(nm);
  M.basis_hash = hash;
  M.mat.resize(basis.dim(), basis.dim());
  M.mat.setFromTriplets(trips.begin(), trips.end());
  M.mat.makeCompressed();
  M.overflow = false;
  M.overflow_cols.assign(basis.dim(), 0);
  return CacheStatus::ok;
}

}  // namespace fuzzydynsym::fock
