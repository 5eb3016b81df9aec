#pragma once

// Dense eigensolver for superoperators restricted to a masked subspace,
// self-adjoint with respect to the weighted Hilbert-Schmidt inner product.
//
// The mask is partitioned by the L3 cell label (2*m integer); block
// structure is verified on the actual sparse entries before use.  For
// rotationally invariant operators the block-m spectrum is contained in the
// block-(m-1) spectrum, so blocks are solved in increasing |m| and the scan
// stops once a block minimum clears the requested range (opt-in via
// monotone_m_blocks).

#include <Eigen/Dense>
#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "fuzzydynsym/supermatrix.hpp"

namespace fuzzydynsym::fock {

struct EigenOpts {
  enum class Which { lowest, window };
  Which which = Which::lowest;
  int k = 6;
  double window_lo = 0.0;
  double window_hi = 0.0;
  bool need_vectors = true;
  bool monotone_m_blocks = false;  // enable the |m|-ascending early stop
  double hermiticity_tol = 1e-8;
  double residual_tol = 1e-8;
  double cluster_window = 1e-6;
};

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXcd vec;  // components over the mask index list, weighted-unit norm
  double residual = 0.0;
  int two_m = 0;
  int cluster = -1;
};

struct EigenSolution {
  std::vector<EigenPair> pairs;          // ascending by eigenvalue
  std::vector<std::vector<int>> clusters;  // indices into pairs, grouped
  bool scan_complete = true;             // false when the |m| scan stopped early
  int max_abs_two_m_scanned = 0;
};

class NonHermitianError : public std::runtime_error {
 public:
  explicit NonHermitianError(double residual)
      : std::runtime_error("eigensolve: input not self-adjoint on mask, residual " +
                           std::to_string(residual)) {}
};

inline EigenSolution eigensolve(const SuperMatrix& M, const OpSpaceBasis& basis,
                                const std::vector<int>& mask, const GramWeights& weights,
                                const EigenOpts& opts) {
  const int n = static_cast<int>(mask.size());
  std::vector<int> pos(basis.dim(), -1);
  for (int k = 0; k < n; ++k) pos[mask[k]] = k;

  // partition mask positions by two_m
  std::map<int, std::vector<int>> blocks;  // two_m -> mask positions
  std::vector<int> cell_two_m(n);
  for (int k = 0; k < n; ++k) {
    cell_two_m[k] = basis.two_m(mask[k]);
    blocks[cell_two_m[k]].push_back(k);
  }

  // verify block closure on the sparse entries
  for (int c : mask) {
    int pc = pos[c];
    for (SparseC::InnerIterator it(M.mat, c); it; ++it) {
      int pr = pos[it.row()];
      if (pr >= 0 && cell_two_m[pr] != cell_two_m[pc] && std::abs(it.value()) > 1e-14)
        throw std::runtime_error("eigensolve: mask block structure violated by matrix entries");
    }
  }

  std::vector<double> wt = mask_weights(basis, weights, mask);

  // block keys ordered by (|m|, m)
  std::vector<int> keys;
  for (const auto& [m2, v] : blocks) keys.push_back(m2);
  std::sort(keys.begin(), keys.end(), [](int a, int b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
  });

  struct RawPair {
    double value;
    int two_m;
    int block_key;
    int idx_in_block;
  };
  std::vector<RawPair> raw;
  std::map<int, Eigen::MatrixXcd> block_vectors;  // rescaled eigenvectors per block
  std::map<int, Eigen::VectorXd> block_values;

  EigenSolution sol;
  double kth_best = std::numeric_limits<double>::infinity();
  int prev_abs = -1;
  for (int key : keys) {
    int abs_m = std::abs(key);
    if (opts.monotone_m_blocks && prev_abs >= 0 && abs_m > prev_abs) {
      // all blocks at the previous |m| level solved; decide whether to stop
      double level_min = std::numeric_limits<double>::infinity();
      for (const auto& [k2, vals] : block_values)
        if (std::abs(k2) == prev_abs && vals.size() > 0) level_min = std::min(level_min, vals[0]);
      bool done = false;
      if (opts.which == EigenOpts::Which::lowest) {
        done = static_cast<int>(raw.size()) >= opts.k && level_min > kth_best;
      } else {
        done = level_min > opts.window_hi;
      }
      if (done) {
        sol.scan_complete = false;
        sol.max_abs_two_m_scanned = prev_abs;
        break;
      }
    }
    prev_abs = abs_m;
    sol.max_abs_two_m_scanned = abs_m;

    const std::vector<int>& bp = blocks[key];
    const int bn = static_cast<int>(bp.size());
    // weighted-rescaled dense block: Bt = W^1/2 B W^-1/2
    Eigen::MatrixXcd Bt = Eigen::MatrixXcd::Zero(bn, bn);
    std::vector<int> local(n, -1);
    for (int j = 0; j < bn; ++j) local[bp[j]] = j;
    for (int j = 0; j < bn; ++j) {
      int gc = mask[bp[j]];
      for (SparseC::InnerIterator it(M.mat, gc); it; ++it) {
        int pr = pos[it.row()];
        if (pr < 0) continue;
        int lr = local[pr];
        if (lr < 0) continue;
        Bt(lr, j) = it.value() * std::sqrt(wt[pr] / wt[bp[j]]);
      }
    }
    double bnorm = Bt.norm();
    double herm = bnorm > 0 ? (Bt - Bt.adjoint()).norm() / bnorm : 0.0;
    if (herm > opts.hermiticity_tol) throw NonHermitianError(herm);
    Bt = 0.5 * (Bt + Bt.adjoint().eval());

    Eigen::VectorXd vals;
    Eigen::MatrixXcd vecs;
    double imag_norm = Bt.imag().norm();
    if (imag_norm <= 1e-14 * std::max(1.0, bnorm)) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
          Bt.real(), opts.need_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
      if (es.info() != Eigen::Success) throw std::runtime_error("eigensolve: no convergence");
      vals = es.eigenvalues();
      if (opts.need_vectors) vecs = es.eigenvectors().cast<Complex>();
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
          Bt, opts.need_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
      if (es.info() != Eigen::Success) throw std::runtime_error("eigensolve: no convergence");
      vals = es.eigenvalues();
      if (opts.need_vectors) vecs = es.eigenvectors();
    }
    block_values[key] = vals;
    if (opts.need_vectors) {
      // residual in the rescaled metric, then store
      block_vectors[key] = vecs;
    }
    for (int i = 0; i < vals.size(); ++i) raw.push_back({vals[i], key, key, i});

    if (opts.which == EigenOpts::Which::lowest) {
      std::vector<double> all;
      all.reserve(raw.size());
      for (const auto& r : raw) all.push_back(r.value);
      std::nth_element(all.begin(),
                       all.begin() + std::min<std::size_t>(opts.k, all.size()) - 1, all.end());
      if (static_cast<int>(all.size()) >= opts.k)
        kth_best = all[std::min<std::size_t>(opts.k, all.size()) - 1];
    }
  }

  // selection
  std::sort(raw.begin(), raw.end(), [](const RawPair& a, const RawPair& b) {
    if (a.value != b.value) return a.value < b.value;
    if (std::abs(a.two_m) != std::abs(b.two_m)) return std::abs(a.two_m) < std::abs(b.two_m);
    return a.two_m < b.two_m;
  });
  std::vector<RawPair> chosen;
  if (opts.which == EigenOpts::Which::lowest) {
    for (const auto& r : raw) {
      if (static_cast<int>(chosen.size()) >= opts.k) break;
      chosen.push_back(r);
    }
  } else {
    for (const auto& r : raw)
      if (r.value >= opts.window_lo && r.value <= opts.window_hi) chosen.push_back(r);
  }

  for (const auto& r : chosen) {
    EigenPair p;
    p.value = r.value;
    p.two_m = r.two_m;
    if (opts.need_vectors) {
      const std::vector<int>& bp = blocks[r.block_key];
      const Eigen::MatrixXcd& vecs = block_vectors[r.block_key];
      Eigen::VectorXcd full = Eigen::VectorXcd::Zero(n);
      for (std::size_t j = 0; j < bp.size(); ++j)
        full[bp[j]] = vecs(static_cast<int>(j), r.idx_in_block) / std::sqrt(wt[bp[j]]);
      p.vec = full;
      // residual || M psi - E psi ||_w with || psi ||_w = 1
      Eigen::VectorXcd Mv = Eigen::VectorXcd::Zero(n);
      for (int c = 0; c < n; ++c) {
        if (full[c] == Complex{0.0, 0.0}) continue;
        for (SparseC::InnerIterator it(M.mat, mask[c]); it; ++it) {
          int pr = pos[it.row()];
          if (pr >= 0) Mv[pr] += it.value() * full[c];
        }
      }
      double r2 = 0.0;
      for (int c = 0; c < n; ++c) r2 += wt[c] * std::norm(Mv[c] - r.value * full[c]);
      p.residual = std::sqrt(r2);
    }
    sol.pairs.push_back(std::move(p));
  }

  // degeneracy clusters
  for (std::size_t i = 0; i < sol.pairs.size(); ++i) {
    if (i == 0 || sol.pairs[i].value - sol.pairs[i - 1].value >
                      opts.cluster_window * std::max(1.0, std::abs(sol.pairs[i].value)))
      sol.clusters.emplace_back();
    sol.clusters.back().push_back(static_cast<int>(i));
    sol.pairs[i].cluster = static_cast<int>(sol.clusters.size()) - 1;
  }
  return sol;
}

}  // namespace fuzzydynsym::fock
