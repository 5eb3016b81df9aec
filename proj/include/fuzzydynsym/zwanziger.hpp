#pragma once

// Charge-dyon (Zwanziger) problem on the commutative subalgebra: two-body
// reduction, Dirac quantization, monopole field and string potential with
// finite-difference verification, the SO(4) level table and an independent
// radial finite-difference oracle.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fuzzydynsym/gaussian_rational.hpp"

namespace fuzzydynsym::zw {

using Vec3 = std::array<double, 3>;

inline constexpr double kFourPi = 12.566370614359172;

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// ---------------------------------------------------------------------------
// Two-body reduction and quantization
// ---------------------------------------------------------------------------

struct DyonSystem {
  double e1 = 0, e2 = 0;  // electric charges
  double g1 = 0, g2 = 0;  // magnetic charges
  double m1 = 1, m2 = 1;  // masses, positive
};

struct ReducedDyon {
  double m = 1;      // reduced mass
  double mu = 0;     // monopole coupling (e1 g2 - e2 g1)/(4 pi)
  double gamma = 0;  // Coulomb coupling -(e1 e2 + g1 g2)/(4 pi); > 0 binds
};

/// Sign conventions are fixed so gamma > 0 is binding; both couplings can be
/// flipped via config because the source conventions are not pinned down.
inline ReducedDyon reduce_two_body(const DyonSystem& s, double mu_sign = 1.0,
                                   double gamma_sign = 1.0) {
  if (s.m1 <= 0 || s.m2 <= 0) throw std::invalid_argument("masses must be positive");
  ReducedDyon r;
  r.m = s.m1 * s.m2 / (s.m1 + s.m2);
  r.mu = mu_sign * (s.e1 * s.g2 - s.e2 * s.g1) / kFourPi;
  r.gamma = gamma_sign * -(s.e1 * s.e2 + s.g1 * s.g2) / kFourPi;
  return r;
}

/// Dirac condition: 2 mu must be an integer (mu = 0, +-1/2, +-1, ...).
inline bool dirac_check(double mu, double tol = 1e-12) {
  return std::abs(2.0 * mu - std::round(2.0 * mu)) <= tol;
}

// ---------------------------------------------------------------------------
// Monopole field and string potential
// ---------------------------------------------------------------------------

/// B(r) = (g / 4 pi) r^ / r^2; the origin is rejected.
inline Vec3 monopole_field(double g, const Vec3& r) {
  double rr = norm(r);
  if (rr == 0.0) throw std::domain_error("monopole_field: origin");
  double f = g / (kFourPi * rr * rr * rr);
  return {f * r[0], f * r[1], f * r[2]};
}

class StringProximityError : public std::domain_error {
 public:
  StringProximityError() : std::domain_error("vector_potential: point too close to the string") {}
};

/// Symmetric-string potential
///   A(r) = (g / 4 pi) (r x n^)(r . n^) / ( r [ r^2 - (r . n^)^2 ] ),
/// singular along the whole line through the origin in direction n^.
inline Vec3 vector_potential(double g, const Vec3& n_hat, const Vec3& r, double delta = 1e-8) {
  double rr = norm(r);
  if (rr == 0.0) throw StringProximityError();
  double rn = dot(r, n_hat);
  double perp2 = rr * rr - rn * rn;
  if (perp2 < delta * delta) throw StringProximityError();
  Vec3 rxn = cross(r, n_hat);
  double f = g / kFourPi * rn / (rr * perp2);
  return {f * rxn[0], f * rxn[1], f * rxn[2]};
}

/// Numerical flux of B through the sphere of radius R (midpoint rule in
/// cos(theta) and phi); the quantized answer is g.
inline double monopole_flux(double g, double R, int n_theta = 200, int n_phi = 200) {
  double flux = 0.0;
  double dc = 2.0 / n_theta, dp = 2.0 * M_PI / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    double c = -1.0 + (i + 0.5) * dc;
    double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int j = 0; j < n_phi; ++j) {
      double phi = (j + 0.5) * dp;
      Vec3 p{R * s * std::cos(phi), R * s * std::sin(phi), R * c};
      Vec3 B = monopole_field(g, p);
      Vec3 nr{p[0] / R, p[1] / R, p[2] / R};
      flux += dot(B, nr) * R * R * dc * dp;
    }
  }
  return flux;
}

/// Central-difference curl of the potential at a point.
inline Vec3 curl_fd(double g, const Vec3& n_hat, const Vec3& r, double h) {
  auto A = [&](const Vec3& p) { return vector_potential(g, n_hat, p); };
  Vec3 out{};
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    Vec3 pj = r, mj = r, pk = r, mk = r;
    pj[j] += h;
    mj[j] -= h;
    pk[k] += h;
    mk[k] -= h;
    out[i] = (A(pj)[k] - A(mj)[k]) / (2 * h) - (A(pk)[j] - A(mk)[j]) / (2 * h);
  }
  return out;
}

/// Field-strength content of [pi_i, pi_j] = i mu eps_ijk x_k / r^3:
/// checks d_i(mu D_j) - d_j(mu D_i) = mu eps_ijk x_k / r^3 by central
/// differences (D is the unit-normalized potential, g/4pi = 1).  Returns the
/// maximum relative error over the sample.
inline double pi_algebra_check(double mu, const std::vector<Vec3>& points, double h = 1e-5,
                               const Vec3& n_hat = Vec3{0, 0, 1}) {
  if (mu == 0.0) return 0.0;
  double worst = 0.0;
  for (const Vec3& p : points) {
    Vec3 c = curl_fd(kFourPi * mu, n_hat, p, h);
    double rr = norm(p);
    double f = mu / (rr * rr * rr);
    Vec3 expect{f * p[0], f * p[1], f * p[2]};
    double err = 0.0, scale = 0.0;
    for (int i = 0; i < 3; ++i) {
      err += (c[i] - expect[i]) * (c[i] - expect[i]);
      scale += expect[i] * expect[i];
    }
    worst = std::max(worst, std::sqrt(err / scale));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Level table (exact rational row identities)
// ---------------------------------------------------------------------------

struct LevelRow {
  Rational n;           // principal value, |mu| + 1 + k (possibly half-integer)
  double energy = 0.0;  // -m gamma^2 / (2 n^2)
  Rational gamma_prime; // = n
  Rational j_plus, j_minus;
  Rational degeneracy;  // (2 j+ + 1)(2 j- + 1) = n^2 - mu^2
  std::vector<Rational> j_values;  // |mu| .. n-1 in integer steps
};

struct LevelTable {
  Rational mu;  // exact half-integer
  double gamma = 0.0;
  double m = 1.0;
  std::vector<LevelRow> rows;
};

class BoundSectorError : public std::domain_error {
 public:
  BoundSectorError() : std::domain_error("level_table: no bound states unless gamma > 0") {}
};

inline LevelTable level_table(double mu, double gamma, int count, double m = 1.0) {
  if (!dirac_check(mu)) throw std::domain_error("level_table: 2 mu must be an integer");
  if (gamma <= 0.0) throw BoundSectorError();
  LevelTable t;
  t.mu = Rational(static_cast<long>(std::llround(2.0 * mu)), 2);
  t.gamma = gamma;
  t.m = m;
  Rational mu_abs = t.mu < 0 ? Rational(-t.mu) : t.mu;
  for (int k = 0; k < count; ++k) {
    LevelRow row;
    row.n = mu_abs + 1 + k;
    double nd = static_cast<double>(row.n);
    row.energy = -m * gamma * gamma / (2.0 * nd * nd);
    row.gamma_prime = row.n;
    row.j_plus = (row.gamma_prime + mu_abs - 1) / 2;
    row.j_minus = (row.gamma_prime - mu_abs - 1) / 2;
    row.degeneracy = (2 * row.j_plus + 1) * (2 * row.j_minus + 1);
    for (Rational j = mu_abs; j <= row.n - 1; j += 1) row.j_values.push_back(j);
    t.rows.push_back(std::move(row));
  }
  return t;
}

enum class SymBranch { bound, scattering };

/// Bound:      J^2 + N^2 = gamma'^2 + mu^2 - 1
/// Scattering: J^2 - K^2 = mu^2 - gamma'^2 - 1
inline double casimir_values(double mu, double gamma_prime, SymBranch branch) {
  return branch == SymBranch::bound ? gamma_prime * gamma_prime + mu * mu - 1.0
                                    : mu * mu - gamma_prime * gamma_prime - 1.0;
}

// ---------------------------------------------------------------------------
// Radial finite-difference oracle
// ---------------------------------------------------------------------------

struct RadialGrid {
  // The inner Dirichlet wall shifts s-channel energies by O(r_min), which
  // Richardson refinement cannot remove, so the default sits far below the
  // discretization error.
  double r_min = 1e-6;
  double r_max = 80.0;
  int points = 4000;  // >= 200
};

/// Lowest k eigenvalues of -1/2 u'' + [ j(j+1)/(2 m r^2) - gamma/r ] u = E u
/// with Dirichlet walls (uniform 3-point Laplacian).  This is the radial
/// problem obtained from the dyon Hamiltonian once V = mu^2/(2 m r^2) is
/// imposed; bound energies converge to -m gamma^2 / (2 (j+1+k)^2).
inline std::vector<double> radial_oracle(double mu, double gamma, double j, const RadialGrid& grid,
                                         int k, double m = 1.0) {
  if (grid.points < 200) throw std::invalid_argument("radial grid too coarse (< 200 points)");
  if (!(grid.r_min > 0.0 && grid.r_min < grid.r_max))
    throw std::invalid_argument("radial grid requires 0 < r_min < r_max");
  if (j < std::abs(mu) - 1e-12) throw std::invalid_argument("need j >= |mu|");
  if (std::abs((j - std::abs(mu)) - std::round(j - std::abs(mu))) > 1e-9)
    throw std::invalid_argument("j - |mu| must be an integer");
  if (gamma <= 0.0) throw BoundSectorError();
  const int N = grid.points;
  const double h = (grid.r_max - grid.r_min) / (N + 1);
  Eigen::VectorXd diag(N), sub(N - 1);
  for (int i = 0; i < N; ++i) {
    double r = grid.r_min + (i + 1) * h;
    diag[i] = 1.0 / (m * h * h) + j * (j + 1) / (2.0 * m * r * r) - gamma / r;
  }
  sub.setConstant(-0.5 / (m * h * h));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("radial_oracle: no convergence");
  std::vector<double> out;
  for (int i = 0; i < k && i < N; ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

/// Second-order Richardson extrapolation over grids with N and 2N points.
inline std::vector<double> radial_oracle_refined(double mu, double gamma, double j,
                                                 const RadialGrid& grid, int k, double m = 1.0) {
  RadialGrid fine = grid;
  fine.points = 2 * grid.points;
  std::vector<double> coarse = radial_oracle(mu, gamma, j, grid, k, m);
  std::vector<double> finer = radial_oracle(mu, gamma, j, fine, k, m);
  std::vector<double> out(coarse.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (4.0 * finer[i] - coarse[i]) / 3.0;
  return out;
}

// ---------------------------------------------------------------------------
// Cross-check between the algebraic table and the oracle
// ---------------------------------------------------------------------------

struct CrossCheckEntry {
  Rational n;
  Rational j;
  double table_energy = 0.0;
  double oracle_energy = 0.0;
  double rel_error = 0.0;
  bool match = false;
};

struct CrossCheckReport {
  std::vector<CrossCheckEntry> entries;
  bool degeneracies_exact = true;  // sum_j (2j+1) == n^2 - mu^2 per row
  bool all_match = true;
};

inline CrossCheckReport cross_check(const LevelTable& table, double tolerance,
                                    const RadialGrid& base_grid, bool refine = true) {
  CrossCheckReport rep;
  double mu = static_cast<double>(table.mu);
  for (const LevelRow& row : table.rows) {
    // enforce r_max > 3 n^2 Bohr-like radii
    double nd = static_cast<double>(row.n);
    RadialGrid grid = base_grid;
    double needed = 3.0 * nd * nd / (table.m * table.gamma);
    if (grid.r_max <= needed) grid.r_max = 1.5 * needed;

    Rational deg_count = 0;
    for (const Rational& j : row.j_values) {
      deg_count += 2 * j + 1;
      double jd = static_cast<double>(j);
      int level_idx = static_cast<int>(std::lround(nd - jd - 1));  // k-th state in channel j
      std::vector<double> energies =
          refine ? radial_oracle_refined(mu, table.gamma, jd, grid, level_idx + 1, table.m)
                 : radial_oracle(mu, table.gamma, jd, grid, level_idx + 1, table.m);
      CrossCheckEntry e;
      e.n = row.n;
      e.j = j;
      e.table_energy = row.energy;
      e.oracle_energy = energies[level_idx];
      e.rel_error = std::abs(e.oracle_energy - e.table_energy) / std::abs(e.table_energy);
      e.match = e.rel_error <= tolerance;
      if (!e.match) rep.all_match = false;
      rep.entries.push_back(std::move(e));
    }
    if (deg_count != row.degeneracy) rep.degeneracies_exact = false;
  }
  return rep;
}

}  // namespace fuzzydynsym::zw
