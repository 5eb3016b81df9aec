#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "fuzzydynsym/supermatrix.hpp"

using namespace fuzzydynsym;
using fock::Complex;
using fock::GramWeights;
using fock::OpSpaceBasis;
using fock::SparseC;
using fock::SuperMatrix;

namespace {

ncalg::OperatorPoly gen(int slot) {
  return ncalg::OperatorPoly::generator(ncalg::Generator::from_slot(slot));
}

ncalg::OperatorPoly random_poly(std::mt19937& rng, int max_deg) {
  std::uniform_int_distribution<int> slot_dist(0, 7), coeff_dist(-2, 2), nterm(1, 3),
      deg_dist(0, max_deg), lam_dist(0, 1);
  ncalg::OperatorPoly p;
  int nt = nterm(rng);
  for (int t = 0; t < nt; ++t) {
    GaussianRational c(Rational(coeff_dist(rng)), Rational(coeff_dist(rng)));
    if (c.is_zero()) c = GaussianRational(Rational(1, 3));
    ncalg::OperatorPoly m =
        ncalg::OperatorPoly::scalar(LambdaPoly(c, static_cast<unsigned>(lam_dist(rng))));
    int d = deg_dist(rng);
    for (int k = 0; k < d; ++k) m *= gen(slot_dist(rng));
    p += m;
  }
  return p;
}

double col_diff(const SparseC& A, const SparseC& B, const std::vector<int>& cols) {
  double num = 0.0, den = 0.0;
  for (int c : cols) {
    Eigen::VectorXcd a = A.col(c), b = B.col(c);
    num += (a - b).squaredNorm();
    den += b.squaredNorm();
  }
  return std::sqrt(num) / std::max(1.0, std::sqrt(den));
}

}  // namespace

TEST_CASE("basis enumeration: dimensions, ordering, masks") {
  OpSpaceBasis b1(1);
  CHECK(b1.state_count() == 3);
  CHECK(b1.dim() == 9);  // (1 + 2)^2 cells
  CHECK(b1.physical_mask().size() == 5);  // 1 + 4

  OpSpaceBasis b2(2);
  CHECK(b2.state_count() == 6);
  CHECK(b2.dim() == 36);
  CHECK(b2.physical_mask().size() == 14);  // 1 + 4 + 9

  // states: sector ascending, n1 decreasing
  CHECK(b2.state(0).n1 == 0);
  CHECK(b2.state(1).n1 == 1);
  CHECK(b2.state(1).n2 == 0);
  CHECK(b2.state(2).n1 == 0);
  CHECK(b2.state(2).n2 == 1);
  CHECK(b2.state_index(1, 1) == 4);
  CHECK(b2.state_index(3, 0) == -1);  // beyond the cutoff

  // cell lookup is the inverse of enumeration
  for (int c = 0; c < b2.dim(); ++c)
    CHECK(b2.cell_index(b2.cell(c).row_state, b2.cell(c).col_state) == c);

  // two_m is even iff row and column sectors have equal parity
  for (int c = 0; c < b2.dim(); ++c) {
    const fock::Cell& cl = b2.cell(c);
    CHECK((b2.two_m(c) - (cl.row_sector - cl.col_sector)) % 2 == 0);
  }

  // interior mask: margin 1 keeps sectors <= 1 on both sides
  for (int c : b2.interior_mask(1, false)) {
    CHECK(b2.cell(c).row_sector <= 1);
    CHECK(b2.cell(c).col_sector <= 1);
  }
  CHECK(b2.hash() == OpSpaceBasis(2).hash());
  CHECK(b2.hash() != OpSpaceBasis(3).hash());
  CHECK_THROWS_AS(OpSpaceBasis(-1), std::invalid_argument);
}

TEST_CASE("represent: scalars, diagonal coordinates, lambda guard") {
  OpSpaceBasis basis(4);
  const double lam = 0.5;

  SuperMatrix Id = fock::represent(ncalg::OperatorPoly::lambda(), basis, lam);
  for (int c = 0; c < basis.dim(); ++c) {
    CHECK(Id.mat.coeff(c, c) == Complex{lam, 0.0});
  }
  CHECK(Id.mat.nonZeros() == basis.dim());

  // x3 (left) is diagonal with value lambda (n1 - n2) of the row state
  SuperMatrix X3 = fock::represent(ncalg::coordinate(3, ncalg::Side::left), basis, lam);
  for (int c = 0; c < basis.dim(); ++c) {
    const fock::Cell& cl = basis.cell(c);
    const fock::FockState& r = basis.state(cl.row_state);
    double expect = lam * (r.n1 - r.n2);
    CHECK(std::abs(X3.mat.coeff(c, c) - Complex{expect, 0.0}) <= 1e-14);
    if (cl.row_sector == 1) CHECK(std::abs(std::abs(X3.mat.coeff(c, c).real()) - lam) <= 1e-14);
  }
  CHECK_FALSE(X3.overflow);
  CHECK_THROWS_AS(fock::represent(ncalg::OperatorPoly::one(), basis, 0.0),
                  std::invalid_argument);
}

TEST_CASE("represent is a homomorphism away from the cutoff") {
  OpSpaceBasis basis(8);
  const double lam = 0.7;
  std::mt19937 rng(20260823);
  // combined ladder degree <= 6, so cells with both sectors <= n_max - 6 are
  // represented without truncation and the product identity is exact there
  std::vector<int> interior = basis.interior_mask(6, false);
  REQUIRE(interior.size() == 36);
  for (int trial = 0; trial < 50; ++trial) {
    ncalg::OperatorPoly p = random_poly(rng, 3), q = random_poly(rng, 3);
    SuperMatrix Rp = fock::represent(p, basis, lam);
    SuperMatrix Rq = fock::represent(q, basis, lam);
    SuperMatrix Rpq = fock::represent(p * q, basis, lam);
    SparseC prod = SparseC(Rp.mat * Rq.mat);
    CHECK(col_diff(Rpq.mat, prod, interior) <= 1e-12);
  }
}

TEST_CASE("coordinate algebra survives the representation") {
  OpSpaceBasis basis(6);
  const double lam = 0.5;
  auto X = [&](int j) { return fock::represent(ncalg::coordinate(j, ncalg::Side::left), basis, lam); };
  SparseC comm = SparseC(X(1).mat * X(2).mat) - SparseC(X(2).mat * X(1).mat);
  SparseC rhs = SparseC(Complex{0.0, 2.0 * lam} * X(3).mat);
  // coordinates preserve both sectors, so the identity is exact on every cell
  CHECK(SparseC(comm - rhs).norm() <= 1e-13 * rhs.norm());

  // r^2 - sum x_j^2 = lambda^2 (left realization)
  SparseC r = fock::represent(ncalg::radius(ncalg::Side::left), basis, lam).mat;
  SparseC sum(basis.dim(), basis.dim());
  for (int j = 1; j <= 3; ++j) sum += SparseC(X(j).mat * X(j).mat);
  Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(basis.dim());
  SparseC lhs = SparseC(r * r) - sum;
  for (int c = 0; c < basis.dim(); ++c)
    CHECK(std::abs(lhs.coeff(c, c) - Complex{lam * lam, 0.0}) <= 1e-13);
}

TEST_CASE("weighted inner product: normalization and orthogonality") {
  OpSpaceBasis basis(3);
  GramWeights w{1.0};
  constexpr double four_pi = 12.566370614359172;

  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(basis.dim());
  e0[0] = 1.0;  // E[(0,0),(0,0)]
  CHECK(std::abs(fock::inner_product(e0, e0, basis, w).real() - four_pi) <= 1e-12);

  // a sector-1 diagonal cell has weight 4 pi * 2
  int c1 = -1;
  for (int c = 0; c < basis.dim(); ++c)
    if (basis.cell(c).row_sector == 1 && basis.cell(c).col_sector == 1 &&
        basis.cell(c).row_state == basis.cell(c).col_state) {
      c1 = c;
      break;
    }
  REQUIRE(c1 >= 0);
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(basis.dim());
  e1[c1] = 1.0;
  CHECK(std::abs(fock::inner_product(e1, e1, basis, w).real() - 2.0 * four_pi) <= 1e-12);
  CHECK(std::abs(fock::inner_product(e0, e1, basis, w)) == 0.0);

  // weights are strictly positive and scale as lambda^3
  GramWeights wl{0.5};
  for (int c = 0; c < basis.dim(); ++c) {
    CHECK(w.weight(basis, c) > 0.0);
    CHECK(std::abs(wl.weight(basis, c) - 0.125 * w.weight(basis, c)) <= 1e-15);
  }
  Eigen::VectorXcd bad = Eigen::VectorXcd::Zero(2);
  CHECK_THROWS_AS(fock::inner_product(bad, bad, basis, w), std::invalid_argument);
}

TEST_CASE("weighted self-adjointness of observables") {
  OpSpaceBasis basis(8);
  const double lam = 0.5;
  GramWeights w{lam};
  std::vector<int> phys = basis.physical_mask();

  SuperMatrix X3 = fock::represent(ncalg::position_sym(3), basis, lam);
  CHECK(fock::hermitian_check(X3, basis, w, phys) <= 1e-13);
  SuperMatrix L3 = fock::represent(ncalg::angular_momentum(3), basis, lam);
  CHECK(fock::hermitian_check(L3, basis, w, phys) <= 1e-13);
  SuperMatrix N = fock::represent(ncalg::number_op(ncalg::Side::left), basis, lam);
  CHECK(fock::hermitian_check(N, basis, w, phys) <= 1e-13);

  // a lone annihilator is far from self-adjoint (on the full cell space; it
  // maps every physical cell off the physical mask)
  std::vector<int> all(basis.dim());
  for (int c = 0; c < basis.dim(); ++c) all[c] = c;
  SuperMatrix A1 = fock::represent(gen(4), basis, lam);
  CHECK(fock::hermitian_check(A1, basis, w, all) > 0.1);
}

TEST_CASE("physical mask is closed under the symmetry generators") {
  OpSpaceBasis basis(6);
  const double lam = 0.5;
  std::vector<int> phys = basis.physical_mask();
  std::vector<int> pos(basis.dim(), -1);
  for (std::size_t k = 0; k < phys.size(); ++k) pos[phys[k]] = static_cast<int>(k);

  for (const ncalg::OperatorPoly& p :
       {ncalg::position_sym(1), ncalg::position_sym(2), ncalg::position_sym(3),
        ncalg::angular_momentum(1), ncalg::angular_momentum(2), ncalg::angular_momentum(3),
        ncalg::number_op(ncalg::Side::left)}) {
    SparseC M = fock::represent_masked(p, basis, lam, phys, pos);
    CHECK(M.rows() == static_cast<int>(phys.size()));
    SuperMatrix F = fock::represent(p, basis, lam);
    // no leakage: every represented amplitude out of a physical column lands
    // on a physical cell (cutoff overflow at the top sector is flagged
    // separately and is expected for the right-multiplication words)
    for (int c : phys)
      for (SparseC::InnerIterator it(F.mat, c); it; ++it)
        CHECK(basis.is_physical(static_cast<int>(it.row())));
    // masked representation agrees with the restriction of the full one
    SparseC full = fock::restrict_to_mask(F.mat, phys);
    CHECK(SparseC(M - full).norm() <= 1e-14 * std::max(1.0, full.norm()));
  }
  // a purely left-sided sector-preserving word never overflows the cutoff
  bool dropped = false;
  fock::represent_masked(ncalg::number_op(ncalg::Side::left), basis, lam, phys, pos, &dropped);
  CHECK_FALSE(dropped);
}

TEST_CASE("cache: bit-exact round trip and failure taxonomy") {
  OpSpaceBasis basis(5);
  const double lam = 0.5;
  SuperMatrix M = fock::represent(ncalg::angular_momentum(2), basis, lam);
  std::string path = "cache_test_roundtrip.fdsm";

  REQUIRE(fock::cache_write(M, path, "full") == fock::CacheStatus::ok);
  SuperMatrix R;
  std::string tag;
  REQUIRE(fock::cache_read(path, basis, R, &tag) == fock::CacheStatus::ok);
  CHECK(tag == "full");
  CHECK(R.lambda == M.lambda);
  CHECK(R.n_max == M.n_max);
  CHECK(R.basis_hash == M.basis_hash);
  // bit-exact: the difference is exactly the zero matrix
  CHECK(SparseC(R.mat - M.mat).norm() == 0.0);

  SUBCASE("missing file is an io_error") {
    SuperMatrix T;
    CHECK(fock::cache_read("no_such_cache_file.fdsm", basis, T) == fock::CacheStatus::io_error);
  }
  SUBCASE("wrong basis is a hash_mismatch") {
    OpSpaceBasis other(6);
    SuperMatrix T;
    CHECK(fock::cache_read(path, other, T) == fock::CacheStatus::hash_mismatch);
  }
  SUBCASE("version bump is a version_mismatch") {
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    bytes[8] = static_cast<char>(bytes[8] + 1);  // version field follows the magic
    std::ofstream out("cache_test_version.fdsm", std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    SuperMatrix T;
    CHECK(fock::cache_read("cache_test_version.fdsm", basis, T) ==
          fock::CacheStatus::version_mismatch);
    std::remove("cache_test_version.fdsm");
  }
  SUBCASE("truncation is a corrupt_payload") {
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    std::ofstream out("cache_test_trunc.fdsm", std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() - 9));
    out.close();
    SuperMatrix T;
    CHECK(fock::cache_read("cache_test_trunc.fdsm", basis, T) ==
          fock::CacheStatus::corrupt_payload);
    std::remove("cache_test_trunc.fdsm");
  }
  SUBCASE("flipped payload byte is a corrupt_payload") {
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    bytes[bytes.size() - 20] = static_cast<char>(bytes[bytes.size() - 20] ^ 0x5a);
    std::ofstream out("cache_test_flip.fdsm", std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    SuperMatrix T;
    CHECK(fock::cache_read("cache_test_flip.fdsm", basis, T) ==
          fock::CacheStatus::corrupt_payload);
    std::remove("cache_test_flip.fdsm");
  }
  std::remove(path.c_str());
}

TEST_CASE("representation build is deterministic") {
  OpSpaceBasis basis(6);
  SuperMatrix A = fock::represent(ncalg::laplacian_kernel(), basis, 0.5);
  SuperMatrix B = fock::represent(ncalg::laplacian_kernel(), basis, 0.5);
  CHECK(A.mat.nonZeros() == B.mat.nonZeros());
  CHECK(SparseC(A.mat - B.mat).norm() == 0.0);
  CHECK(A.basis_hash == B.basis_hash);
}
