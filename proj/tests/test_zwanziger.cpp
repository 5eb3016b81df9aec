#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fuzzydynsym/zwanziger.hpp"

using namespace fuzzydynsym;
using namespace fuzzydynsym::zw;

namespace {

/// Random points bounded away from the origin and from the z-axis string.
std::vector<Vec3> off_string_points(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<Vec3> pts;
  while (static_cast<int>(pts.size()) < count) {
    Vec3 r{u(rng), u(rng), u(rng)};
    if (r[0] * r[0] + r[1] * r[1] < 0.09 || dot(r, r) < 0.25) continue;
    pts.push_back(r);
  }
  return pts;
}

}  // namespace

TEST_CASE("two-body reduction and Dirac quantization") {
  // opposite unit electric charges bind with gamma = 1 / (4 pi)
  ReducedDyon r = reduce_two_body({-1.0, 1.0, 0.0, 0.0, 1.0, 1.0});
  CHECK(r.m == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.mu == 0.0);
  CHECK(r.gamma == doctest::Approx(1.0 / kFourPi).epsilon(1e-15));

  // charge-monopole pair: mu = e g / (4 pi), no Coulomb term
  ReducedDyon cm = reduce_two_body({1.0, 0.0, 0.0, 2.0 * kFourPi, 2.0, 2.0});
  CHECK(cm.m == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cm.mu == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(cm.gamma == 0.0);

  // sign switches are config-level conventions
  ReducedDyon flipped = reduce_two_body({1.0, 0.0, 0.0, 2.0 * kFourPi, 2.0, 2.0}, -1.0, 1.0);
  CHECK(flipped.mu == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK_THROWS_AS(reduce_two_body({0, 0, 0, 0, 0.0, 1.0}), std::invalid_argument);

  CHECK(dirac_check(0.5));
  CHECK(dirac_check(0.0));
  CHECK(dirac_check(-3.5));
  CHECK_FALSE(dirac_check(0.3));
}

TEST_CASE("monopole field and flux quantization") {
  // |B| = g / (4 pi r^2), radial
  Vec3 p{0.0, 0.0, 2.0};
  Vec3 B = monopole_field(kFourPi, p);
  CHECK(B[0] == 0.0);
  CHECK(B[1] == 0.0);
  CHECK(B[2] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS(monopole_field(1.0, Vec3{0, 0, 0}), std::domain_error);

  // flux through any sphere equals g, radius independent
  for (double R : {0.5, 1.0, 2.0}) CHECK(std::abs(monopole_flux(2.0, R, 400, 400) - 2.0) <= 1e-6);
  CHECK(std::abs(monopole_flux(-1.0, 1.0, 400, 400) + 1.0) <= 1e-6);
}

TEST_CASE("string potential: curl reproduces B off the string") {
  const double g = 2.0;
  const Vec3 nz{0, 0, 1};

  SUBCASE("100 random off-string points") {
    for (const Vec3& r : off_string_points(100, 42)) {
      Vec3 B = monopole_field(g, r);
      Vec3 C = curl_fd(g, nz, r, 1e-5);
      double scale = norm(B);
      for (int i = 0; i < 3; ++i) CHECK(std::abs(C[i] - B[i]) <= 1e-4 * scale);
    }
  }
  SUBCASE("gauge independence: a tilted string gives the same curl") {
    Vec3 nt{0.6, 0.0, 0.8};
    for (const Vec3& r : off_string_points(20, 7)) {
      if (std::abs(dot(r, nt)) > 0.95 * norm(r)) continue;  // keep clear of both strings
      Vec3 a = curl_fd(g, nz, r, 1e-5);
      Vec3 b = curl_fd(g, nt, r, 1e-5);
      for (int i = 0; i < 3; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-4 * norm(a));
    }
  }
  SUBCASE("finite-difference error scales as h^2") {
    Vec3 p{1.1, 0.7, -0.4};
    Vec3 B = monopole_field(g, p);
    auto err = [&](double h) {
      Vec3 C = curl_fd(g, nz, p, h);
      double e = 0.0;
      for (int i = 0; i < 3; ++i) e += (C[i] - B[i]) * (C[i] - B[i]);
      return std::sqrt(e);
    };
    CHECK(err(2e-3) / err(1e-3) == doctest::Approx(4.0).epsilon(0.5 / 4.0));
  }
  SUBCASE("the string itself is rejected") {
    CHECK_THROWS_AS(vector_potential(g, nz, Vec3{0, 0, 1.5}), StringProximityError);
    CHECK_THROWS_AS(vector_potential(g, nz, Vec3{0, 0, -1.5}), StringProximityError);
    CHECK_THROWS_AS(vector_potential(g, nz, Vec3{0, 0, 0}), StringProximityError);
  }
}

TEST_CASE("pi-algebra field strength identity") {
  std::vector<Vec3> pts = off_string_points(50, 7);
  CHECK(pi_algebra_check(0.5, pts) <= 1e-4);
  CHECK(pi_algebra_check(-1.0, pts) <= 1e-4);
  CHECK(pi_algebra_check(0.0, pts) == 0.0);
}

TEST_CASE("level table: exact rational structure") {
  SUBCASE("mu = 1/2, gamma = 1 (half-integer tower)") {
    LevelTable t = level_table(0.5, 1.0, 3);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].n == Rational(3, 2));
    CHECK(t.rows[0].energy == doctest::Approx(-2.0 / 9.0).epsilon(1e-14));
    CHECK(t.rows[0].j_plus == Rational(1, 2));
    CHECK(t.rows[0].j_minus == Rational(0));
    CHECK(t.rows[0].degeneracy == Rational(2));  // n^2 - mu^2 = 9/4 - 1/4
    CHECK(t.rows[1].n == Rational(5, 2));
    CHECK(t.rows[1].degeneracy == Rational(6));
    for (const LevelRow& r : t.rows) {
      CHECK(r.j_plus - r.j_minus == t.mu);
      CHECK(r.j_plus + r.j_minus + 1 == r.gamma_prime);
      CHECK(r.degeneracy == r.n * r.n - t.mu * t.mu);
      Rational sum = 0;
      for (const Rational& j : r.j_values) sum += 2 * j + 1;
      CHECK(sum == r.degeneracy);
    }
  }
  SUBCASE("mu = 0 reduces to hydrogen") {
    LevelTable t = level_table(0.0, 1.0, 3);
    for (int k = 0; k < 3; ++k) {
      CHECK(t.rows[k].n == Rational(k + 1));
      CHECK(t.rows[k].energy == doctest::Approx(-0.5 / ((k + 1.0) * (k + 1.0))).epsilon(1e-14));
      CHECK(t.rows[k].degeneracy == Rational((k + 1) * (k + 1)));
    }
  }
  SUBCASE("mu = 1 ground level is 3-fold") {
    LevelTable t = level_table(1.0, 1.0, 1);
    CHECK(t.rows[0].n == Rational(2));
    CHECK(t.rows[0].degeneracy == Rational(3));
    CHECK(t.rows[0].j_values.size() == 1);
    CHECK(t.rows[0].j_values[0] == Rational(1));
  }
  SUBCASE("reduced mass scales the energies") {
    LevelTable t = level_table(0.0, 1.0, 1, 0.5);
    CHECK(t.rows[0].energy == doctest::Approx(-0.25).epsilon(1e-14));
  }
  CHECK_THROWS_AS(level_table(0.3, 1.0, 2), std::domain_error);
  CHECK_THROWS_AS(level_table(0.5, 0.0, 2), BoundSectorError);
  CHECK_THROWS_AS(level_table(0.5, -1.0, 2), BoundSectorError);
}

TEST_CASE("Casimir values per branch") {
  // bound: gamma'^2 + mu^2 - 1 at gamma' = 3/2, mu = 1/2
  CHECK(casimir_values(0.5, 1.5, SymBranch::bound) == doctest::Approx(1.5).epsilon(1e-14));
  // scattering: mu^2 - gamma'^2 - 1 at the same labels
  CHECK(casimir_values(0.5, 1.5, SymBranch::scattering) == doctest::Approx(-3.0).epsilon(1e-14));
  // branch swap flips the gamma'^2 sign: sum is 2 (mu^2 - 1/2) * ... check identity
  for (double mu : {0.0, 0.5, 1.0})
    for (double gp : {1.0, 2.5}) {
      CHECK(casimir_values(mu, gp, SymBranch::bound) +
                casimir_values(mu, gp, SymBranch::scattering) ==
            doctest::Approx(2.0 * mu * mu - 2.0).epsilon(1e-14));
    }
}

TEST_CASE("radial oracle: refined energies and input guards") {
  RadialGrid grid;  // defaults
  SUBCASE("hydrogen channel j = 0") {
    std::vector<double> e = radial_oracle_refined(0.0, 1.0, 0.0, grid, 2);
    REQUIRE(e.size() == 2);
    CHECK(std::abs(e[0] + 0.5) / 0.5 <= 1e-4);
    CHECK(std::abs(e[1] + 0.125) / 0.125 <= 1e-4);
  }
  SUBCASE("mu = 1/2 ground: E = -2/9") {
    std::vector<double> e = radial_oracle_refined(0.5, 1.0, 0.5, grid, 1);
    CHECK(std::abs(e[0] + 2.0 / 9.0) / (2.0 / 9.0) <= 1e-4);
  }
  SUBCASE("mu = 1/2, n = 5/2: E = -0.08") {
    std::vector<double> e = radial_oracle_refined(0.5, 1.0, 0.5, grid, 2);
    CHECK(std::abs(e[1] + 0.08) / 0.08 <= 1e-4);
  }
  SUBCASE("Richardson refinement beats the raw grid") {
    // channel j = 1: the lowest level is n = 2, E = -1/8
    RadialGrid coarse{1e-6, 80.0, 800};
    double raw = std::abs(radial_oracle(0.0, 1.0, 1.0, coarse, 1)[0] + 0.125);
    double ref = std::abs(radial_oracle_refined(0.0, 1.0, 1.0, coarse, 1)[0] + 0.125);
    CHECK(ref < raw);
  }
  SUBCASE("guards") {
    CHECK_THROWS_AS(radial_oracle(0.0, 1.0, 0.0, RadialGrid{1e-6, 80.0, 100}, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(radial_oracle(0.0, 1.0, 0.0, RadialGrid{0.0, 80.0, 4000}, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(radial_oracle(1.0, 1.0, 0.5, grid, 1), std::invalid_argument);  // j < |mu|
    CHECK_THROWS_AS(radial_oracle(0.5, 1.0, 1.0, grid, 1), std::invalid_argument);  // j - |mu| not int
    CHECK_THROWS_AS(radial_oracle(0.0, -1.0, 0.0, grid, 1), BoundSectorError);
  }
}

TEST_CASE("cross-check: table vs oracle for three levels each") {
  for (double mu : {0.0, 0.5, 1.0}) {
    LevelTable t = level_table(mu, 1.0, 3);
    CrossCheckReport rep = cross_check(t, 1e-4, RadialGrid{});
    CHECK(rep.all_match);
    CHECK(rep.degeneracies_exact);
    for (const CrossCheckEntry& e : rep.entries) {
      CHECK(e.match);
      CHECK(e.rel_error <= 1e-4);
    }
  }

  // a tampered table is detected
  LevelTable bad = level_table(0.0, 1.0, 2);
  bad.rows[0].energy *= 1.01;
  CrossCheckReport rep = cross_check(bad, 1e-4, RadialGrid{});
  CHECK_FALSE(rep.all_match);

  // broken degeneracy bookkeeping is detected
  LevelTable deg = level_table(0.0, 1.0, 2);
  deg.rows[1].j_values.pop_back();
  CHECK_FALSE(cross_check(deg, 1e-4, RadialGrid{}).degeneracies_exact);
}
