#pragma once

// NC Laplacian, Coulomb Hamiltonian, position/velocity superoperators and
// the radial-multiplier helpers, assembled as SuperMatrices.
// Conventions: hbar = m = 1, H = -(1/2) Delta - q/r, attractive for q > 0.

#include "fuzzydynsym/eigensolve.hpp"
#include "fuzzydynsym/ncalg.hpp"
#include "fuzzydynsym/supermatrix.hpp"

namespace fuzzydynsym::ham {

using fock::Complex;
using fock::OpSpaceBasis;
using fock::SparseC;
using fock::SuperMatrix;

struct ModelParams {
  double lambda = 0.5;
  double q = 1.0;
  int n_max = 10;
};

/// Repo-wide numeric tolerances (single source of truth).
struct Tolerances {
  double represent_rel = 1e-12;   // exact-zero claims mapped to doubles
  double hermiticity = 1e-10;     // weighted self-adjointness of Delta, H, x, V
  double eig_residual = 1e-8;     // per-pair eigensolve residual
  double cluster_window = 1e-6;   // degeneracy clustering, scaled by max(1,|E|)
  double conservation = 1e-8;     // [A_k, H] interior residual
  double lenz_closure_bound = 1e-4;
  double lenz_closure_scatt = 1e-3;
  double casimir_c1 = 1e-4;
  double casimir_c2_rel = 1e-3;
  double regime_band_rel = 1e-9;  // eps_E = band * (2/lambda^2)
  double oracle_rel = 1e-4;
};

/// Diagonal multiplier f(r) = f(lambda (n+1)) keyed by the source (column)
/// sector of each cell.  Used for 1/r and for radial test functions.
inline SuperMatrix radial_multiplier(const OpSpaceBasis& basis, double lambda,
                                     const std::vector<double>& value_per_sector) {
  SuperMatrix M;
  M.lambda = lambda;
  M.n_max = basis.n_max();
  M.basis_hash = basis.hash();
  M.overflow_cols.assign(basis.dim(), 0);
  std::vector<fock::Triplet> trips;
  trips.reserve(basis.dim());
  for (int c = 0; c < basis.dim(); ++c) {
    double v = value_per_sector[basis.cell(c).col_sector];
    if (v != 0.0) trips.emplace_back(c, c, Complex{v, 0.0});
  }
  M.mat.resize(basis.dim(), basis.dim());
  M.mat.setFromTriplets(trips.begin(), trips.end());
  M.mat.makeCompressed();
  return M;
}

/// Exact diagonal inverse of r = lambda (N+1); the spectrum of r is bounded
/// below by lambda, so no regularization is needed.
inline SuperMatrix inverse_r(const OpSpaceBasis& basis, double lambda) {
  std::vector<double> v(basis.n_max() + 1);
  for (int n = 0; n <= basis.n_max(); ++n) v[n] = 1.0 / (lambda * (n + 1));
  return radial_multiplier(basis, lambda, v);
}

/// Delta psi = -(1/(lambda r)) sum_alpha [a^+_alpha, [a_alpha, psi]].
/// The 1/r prefactor is applied by the row (output) sector; on the physical
/// subspace row and column sectors coincide.
inline SuperMatrix laplacian(const OpSpaceBasis& basis, double lambda) {
  SuperMatrix dc = fock::represent(ncalg::laplacian_kernel(), basis, lambda);
  SuperMatrix M = dc;
  std::vector<fock::Triplet> trips;
  for (int c = 0; c < dc.mat.outerSize(); ++c)
    for (SparseC::InnerIterator it(dc.mat, c); it; ++it) {
      int row_sector = basis.cell(static_cast<int>(it.row())).row_sector;
      double pref = -1.0 / (lambda * lambda * (row_sector + 1));
      trips.emplace_back(it.row(), it.col(), pref * it.value());
    }
  M.mat.setZero();
  M.mat.setFromTriplets(trips.begin(), trips.end());
  M.mat.makeCompressed();
  return M;
}

/// H = -(1/2) Delta - q / r.
inline SuperMatrix coulomb_hamiltonian(const OpSpaceBasis& basis, const ModelParams& p) {
  SuperMatrix lap = laplacian(basis, p.lambda);
  SuperMatrix invr = inverse_r(basis, p.lambda);
  SuperMatrix H = lap;
  H.mat = -0.5 * lap.mat - p.q * invr.mat;
  H.mat.makeCompressed();
  return H;
}

/// Symmetrized position superoperator x^_k.
inline SuperMatrix position_superop(int k, const OpSpaceBasis& basis, double lambda) {
  return fock::represent(ncalg::position_sym(k), basis, lambda);
}

/// Rotation generators L_j as matrices.
inline SuperMatrix angular_momentum_superop(int j, const OpSpaceBasis& basis, double lambda) {
  return fock::represent(ncalg::angular_momentum(j), basis, lambda);
}

/// V_i = -i [x^_i, H].
inline SuperMatrix velocity(int i, const SuperMatrix& H, const OpSpaceBasis& basis) {
  SuperMatrix x = position_superop(i, basis, H.lambda);
  SuperMatrix V = x;
  V.mat = Complex{0.0, -1.0} * (SparseC(x.mat * H.mat) - SparseC(H.mat * x.mat));
  V.mat.prune(Complex{0.0, 0.0});
  V.mat.makeCompressed();
  return V;
}

/// Residual of the NC Laplace equation Delta (V(r) P_phys) = 0 per sector.
/// V is given by its values v_n = V(lambda (n+1)); the result reports the
/// weighted norm of Delta applied to the sector-diagonal wave function,
/// decomposed by output sector.
inline std::vector<double> nc_laplace_residual(const OpSpaceBasis& basis, double lambda,
                                               const std::vector<double>& v) {
  SuperMatrix lap = laplacian(basis, lambda);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis.dim());
  for (int c = 0; c < basis.dim(); ++c) {
    const fock::Cell& cell = basis.cell(c);
    if (cell.row_sector == cell.col_sector && cell.row_state == cell.col_state)
      psi[c] = v[cell.col_sector];
  }
  Eigen::VectorXcd out = lap.mat * psi;
  fock::GramWeights w{lambda};
  std::vector<double> per_sector(basis.n_max() + 1, 0.0);
  for (int c = 0; c < basis.dim(); ++c) {
    if (out[c] == Complex{0.0, 0.0}) continue;
    per_sector[basis.cell(c).row_sector] += w.weight(basis, c) * std::norm(out[c]);
  }
  for (double& x : per_sector) x = std::sqrt(x);
  return per_sector;
}

}  // namespace fuzzydynsym::ham
