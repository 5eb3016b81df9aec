#pragma once

// Exact normal-ordered algebra of the eight left/right ladder generators.
//
// Canonical generator order: all daggered generators first (left family
// before right, mode 1 before mode 2), then the undaggered ones in the same
// sub-order.  A normal-ordered word is therefore fully described by an
// exponent vector of length 8.  The left family satisfies the usual CCR
// [a_a, a_b^+] = delta_ab; the right family carries the opposite sign
// [b_a, b_b^+] = -delta_ab; everything else commutes.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fuzzydynsym/gaussian_rational.hpp"

namespace fuzzydynsym::ncalg {

enum class Family : uint8_t { left, right };

struct Generator {
  Family family = Family::left;
  uint8_t mode = 1;  // 1 or 2
  bool daggered = false;

  /// Slot in the canonical exponent vector:
  /// 0:aL1d 1:aL2d 2:bR1d 3:bR2d 4:aL1 5:aL2 6:bR1 7:bR2
  int slot() const {
    int s = (family == Family::left ? 0 : 2) + (mode - 1);
    return daggered ? s : s + 4;
  }
  static Generator from_slot(int s) {
    Generator g;
    g.daggered = s < 4;
    int t = s % 4;
    g.family = t < 2 ? Family::left : Family::right;
    g.mode = static_cast<uint8_t>(t % 2 + 1);
    return g;
  }
};

inline constexpr int kNumGenerators = 8;
using Word = std::array<uint16_t, kNumGenerators>;

inline const char* slot_name(int s) {
  static const char* names[] = {"aL1d", "aL2d", "bR1d", "bR2d", "aL1", "aL2", "bR1", "bR2"};
  return names[s];
}

namespace detail {
inline Rational binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt num{1}, den{1};
  for (unsigned j = 0; j < k; ++j) {
    num *= n - j;
    den *= j + 1;
  }
  return Rational(num, den);
}
inline Rational factorial(unsigned n) {
  BigInt f{1};
  for (unsigned j = 2; j <= n; ++j) f *= j;
  return Rational(f);
}
}  // namespace detail

/// Polynomial in the eight generators, stored in normal-ordered canonical
/// form: equality of polynomials is equality of term maps.
class OperatorPoly {
 public:
  OperatorPoly() = default;

  static OperatorPoly zero() { return {}; }
  static OperatorPoly scalar(LambdaPoly c) {
    OperatorPoly p;
    p.add_term(Word{}, std::move(c));
    return p;
  }
  static OperatorPoly one() { return scalar(LambdaPoly(GaussianRational(1))); }
  static OperatorPoly lambda(unsigned power = 1) { return scalar(LambdaPoly::lambda(power)); }
  static OperatorPoly generator(Generator g) {
    Word w{};
    w[g.slot()] = 1;
    OperatorPoly p;
    p.add_term(w, LambdaPoly(GaussianRational(1)));
    return p;
  }
  static OperatorPoly monomial(const Word& w, LambdaPoly c) {
    OperatorPoly p;
    p.add_term(w, std::move(c));
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Word, LambdaPoly>& terms() const { return terms_; }

  /// Total ladder degree of the highest-degree term.
  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [w, c] : terms_) {
      unsigned s = 0;
      for (auto e : w) s += e;
      if (s > d) d = s;
    }
    return d;
  }

  OperatorPoly& operator+=(const OperatorPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  OperatorPoly& operator-=(const OperatorPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  friend OperatorPoly operator+(OperatorPoly a, const OperatorPoly& b) { return a += b; }
  friend OperatorPoly operator-(OperatorPoly a, const OperatorPoly& b) { return a -= b; }
  friend OperatorPoly operator-(const OperatorPoly& a) {
    OperatorPoly r;
    for (const auto& [w, c] : a.terms_) r.terms_.emplace(w, -c);
    return r;
  }
  friend OperatorPoly operator*(const LambdaPoly& s, const OperatorPoly& p) {
    OperatorPoly r;
    if (s.is_zero()) return r;
    for (const auto& [w, c] : p.terms_) r.add_term(w, s * c);
    return r;
  }
  friend OperatorPoly operator*(const GaussianRational& s, const OperatorPoly& p) {
    return LambdaPoly(s) * p;
  }

  /// Normal-ordered product.  Moving the undaggered part of a left word past
  /// the daggered part of a right word factorizes over the four
  /// (family, mode) pairs; each pair contributes the contraction sum
  ///   A^m B^n = sum_k C(m,k) C(n,k) k! s^k B^(n-k) A^(m-k),  [A,B] = s.
  friend OperatorPoly operator*(const OperatorPoly& a, const OperatorPoly& b) {
    OperatorPoly r;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) multiply_words(wa, wb, ca * cb, r);
    return r;
  }
  OperatorPoly& operator*=(const OperatorPoly& o) { return *this = *this * o; }

  friend bool operator==(const OperatorPoly& a, const OperatorPoly& b) {
    return a.terms_ == b.terms_;
  }

  OperatorPoly pow(unsigned n) const {
    OperatorPoly r = one();
    for (unsigned k = 0; k < n; ++k) r *= *this;
    return r;
  }

  /// Hermitian adjoint: conjugate coefficients, dagger and reverse each
  /// word.  On a canonical word this swaps the daggered and undaggered
  /// exponents pairwise, which is again canonical.
  OperatorPoly adjoint() const {
    OperatorPoly r;
    for (const auto& [w, c] : terms_) {
      Word v{};
      for (int p = 0; p < 4; ++p) {
        v[p] = w[p + 4];
        v[p + 4] = w[p];
      }
      r.add_term(v, c.conj());
    }
    return r;
  }

  BigInt max_denominator() const {
    BigInt d{1};
    for (const auto& [w, c] : terms_) {
      BigInt cd = c.max_denominator();
      if (cd > d) d = cd;
    }
    return d;
  }

  /// Deterministic canonical-form rendering, terms in word order.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      if (!first) os << "  +  ";
      first = false;
      os << "(" << c.to_string() << ")";
      for (int s = 0; s < kNumGenerators; ++s) {
        if (w[s] == 0) continue;
        os << " " << slot_name(s);
        if (w[s] > 1) os << "^" << w[s];
      }
    }
    return os.str();
  }

 private:
  std::map<Word, LambdaPoly> terms_;

  void add_term(const Word& w, LambdaPoly c) {
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(w, std::move(c));
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  static void multiply_words(const Word& wa, const Word& wb, const LambdaPoly& coeff,
                             OperatorPoly& out) {
    // Contraction bounds per pair: undaggered exponent of wa vs daggered of wb.
    std::array<uint16_t, 4> kmax{};
    for (int p = 0; p < 4; ++p) kmax[p] = std::min(wa[p + 4], wb[p]);
    std::array<uint16_t, 4> k{};
    for (;;) {
      Rational factor{1};
      for (int p = 0; p < 4; ++p) {
        if (k[p] == 0) continue;
        Rational f = detail::binomial(wa[p + 4], k[p]) * detail::binomial(wb[p], k[p]) *
                     detail::factorial(k[p]);
        if (p >= 2 && (k[p] & 1)) f = -f;  // right family: [b, b^+] = -1
        factor *= f;
      }
      Word w{};
      for (int p = 0; p < 4; ++p) {
        w[p] = static_cast<uint16_t>(wa[p] + wb[p] - k[p]);
        w[p + 4] = static_cast<uint16_t>(wa[p + 4] - k[p] + wb[p + 4]);
      }
      out.add_term(w, LambdaPoly(GaussianRational(factor)) * coeff);
      // advance multi-index
      int p = 0;
      while (p < 4 && k[p] == kmax[p]) k[p++] = 0;
      if (p == 4) break;
      ++k[p];
    }
  }
};

inline OperatorPoly commutator(const OperatorPoly& p, const OperatorPoly& q) {
  return p * q - q * p;
}

/// Normal-orders a raw generator sequence with an optional scalar prefactor.
inline OperatorPoly normal_order(const std::vector<Generator>& word,
                                 LambdaPoly coeff = LambdaPoly(GaussianRational(1))) {
  OperatorPoly p = OperatorPoly::scalar(std::move(coeff));
  for (const Generator& g : word) p *= OperatorPoly::generator(g);
  return p;
}

// ---------------------------------------------------------------------------
// Abstract one-sided algebra and its lifts.
//
// The one-sided algebra in a_alpha, a_alpha^+ is encoded reusing the left
// slots of OperatorPoly.  lift_left is the identity embedding onto the
// a-hat family (left multiplication, an algebra homomorphism); lift_right
// maps onto the b-hat family reversing products (right multiplication, an
// anti-homomorphism).
// ---------------------------------------------------------------------------

inline void require_left_only(const OperatorPoly& word) {
  for (const auto& [w, c] : word.terms())
    if (w[2] || w[3] || w[6] || w[7])
      throw std::invalid_argument("one-sided word must use the left family only");
}

inline OperatorPoly lift_left(const OperatorPoly& word) {
  require_left_only(word);
  return word;
}

inline OperatorPoly lift_right(const OperatorPoly& word) {
  require_left_only(word);
  OperatorPoly r;
  for (const auto& [w, c] : word.terms()) {
    // canonical a^+d1 a^+d2 a^e1 a^e2 reversed and mapped to b's:
    // b^e2 b^e1 b^+d2 b^+d1 -> (undaggered part) * (daggered part)
    Word undag{}, dag{};
    undag[6] = w[4];
    undag[7] = w[5];
    dag[2] = w[0];
    dag[3] = w[1];
    r += LambdaPoly(c) *
         (OperatorPoly::monomial(undag, LambdaPoly(GaussianRational(1))) *
          OperatorPoly::monomial(dag, LambdaPoly(GaussianRational(1))));
  }
  return r;
}

/// Superoperator Psi -> [word, Psi].
inline OperatorPoly adjoint_action(const OperatorPoly& word) {
  return lift_left(word) - lift_right(word);
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

/// Pauli matrices, standard convention:
/// s1 = ((0,1),(1,0)), s2 = ((0,-i),(i,0)), s3 = ((1,0),(0,-1)).
inline GaussianRational pauli(int j, int alpha, int beta) {
  switch (j) {
    case 1:
      return alpha != beta ? GaussianRational(1) : GaussianRational(0);
    case 2:
      if (alpha == 1 && beta == 2) return {Rational(0), Rational(-1)};
      if (alpha == 2 && beta == 1) return {Rational(0), Rational(1)};
      return GaussianRational(0);
    case 3:
      if (alpha != beta) return GaussianRational(0);
      return alpha == 1 ? GaussianRational(1) : GaussianRational(-1);
    default:
      throw std::invalid_argument("pauli: axis must be 1..3");
  }
}

/// Abstract one-sided a_alpha / a_alpha^+ (left-slot encoding).
inline OperatorPoly abstract_a(int alpha, bool daggered = false) {
  if (alpha < 1 || alpha > 2) throw std::invalid_argument("mode must be 1 or 2");
  Generator g{Family::left, static_cast<uint8_t>(alpha), daggered};
  return OperatorPoly::generator(g);
}

/// sigma^j_ab a^+_a a_b in the abstract one-sided algebra.
inline OperatorPoly abstract_spin(int j) {
  OperatorPoly r;
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b) {
      GaussianRational s = pauli(j, a, b);
      if (s.is_zero()) continue;
      r += s * (abstract_a(a, true) * abstract_a(b));
    }
  return r;
}

/// Abstract number operator N = a^+_a a_a.
inline OperatorPoly abstract_number() {
  return abstract_a(1, true) * abstract_a(1) + abstract_a(2, true) * abstract_a(2);
}

enum class Side { left, right };

/// Lift of x_j = lambda a^+ sigma_j a on the given side.
inline OperatorPoly coordinate(int j, Side side) {
  if (j < 1 || j > 3) throw std::invalid_argument("coordinate: axis must be 1..3");
  OperatorPoly w = abstract_spin(j);
  OperatorPoly lifted = side == Side::left ? lift_left(w) : lift_right(w);
  return LambdaPoly::lambda() * lifted;
}

/// Lift of N on the given side.
inline OperatorPoly number_op(Side side) {
  OperatorPoly n = abstract_number();
  return side == Side::left ? lift_left(n) : lift_right(n);
}

/// r = lambda (N + 1), left lift.
inline OperatorPoly radius(Side side = Side::left) {
  return LambdaPoly::lambda() * (number_op(side) + OperatorPoly::one());
}

/// Rotation generator L_j Psi = (1/2) [a^+ sigma_j a, Psi].
inline OperatorPoly angular_momentum(int j) {
  return GaussianRational(Rational(1, 2)) * adjoint_action(abstract_spin(j));
}

/// Symmetrized position superoperator x^_j Psi = (x_j Psi + Psi x_j)/2.
inline OperatorPoly position_sym(int j) {
  return GaussianRational(Rational(1, 2)) * (coordinate(j, Side::left) + coordinate(j, Side::right));
}

/// c_alpha = (a^_alpha + b^_alpha)/2, the commutative-subalgebra ladder.
inline OperatorPoly c_operator(int alpha) {
  if (alpha < 1 || alpha > 2) throw std::invalid_argument("mode must be 1 or 2");
  Generator ga{Family::left, static_cast<uint8_t>(alpha), false};
  Generator gb{Family::right, static_cast<uint8_t>(alpha), false};
  return GaussianRational(Rational(1, 2)) *
         (OperatorPoly::generator(ga) + OperatorPoly::generator(gb));
}

/// x_ic = sigma^i_ab c^+_a c_b, the commuting position operators.
inline OperatorPoly commutative_coordinate(int i) {
  OperatorPoly r;
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b) {
      GaussianRational s = pauli(i, a, b);
      if (s.is_zero()) continue;
      r += s * (c_operator(a).adjoint() * c_operator(b));
    }
  return r;
}

/// Double-commutator kernel of the Laplacian,
/// Psi -> sum_alpha [a^+_alpha, [a_alpha, Psi]], as a superoperator word.
inline OperatorPoly laplacian_kernel() {
  OperatorPoly r;
  for (int alpha = 1; alpha <= 2; ++alpha) {
    OperatorPoly ad_low = adjoint_action(abstract_a(alpha, false));
    OperatorPoly ad_raise = adjoint_action(abstract_a(alpha, true));
    r += ad_raise * ad_low;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Identity verification
// ---------------------------------------------------------------------------

struct IdentityReport {
  std::string name;
  bool pass = false;
  OperatorPoly difference;
  std::size_t lhs_terms = 0;
  std::size_t rhs_terms = 0;
  std::size_t diff_terms = 0;
  BigInt max_denominator{1};
};

inline IdentityReport verify_identity(const OperatorPoly& lhs, const OperatorPoly& rhs,
                                      std::string name = "") {
  IdentityReport rep;
  rep.name = std::move(name);
  rep.difference = lhs - rhs;
  rep.pass = rep.difference.is_zero();
  rep.lhs_terms = lhs.term_count();
  rep.rhs_terms = rhs.term_count();
  rep.diff_terms = rep.difference.term_count();
  BigInt d = lhs.max_denominator();
  BigInt d2 = rhs.max_denominator();
  rep.max_denominator = d > d2 ? d : d2;
  return rep;
}

/// The paper's kinematic identity suite; every entry must reduce to the
/// exact zero polynomial.
inline std::vector<IdentityReport> identity_suite() {
  std::vector<IdentityReport> out;
  auto I = OperatorPoly::one();
  auto i_unit = GaussianRational::unit_i();

  auto eps = [](int i, int j, int k) -> int {
    return (i - j) * (j - k) * (k - i) / 2;  // Levi-Civita for 1..3
  };

  // [x_i, x_j] = 2 i lambda eps_ijk x_k (left lifts)
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      if (i == j) continue;
      OperatorPoly rhs;
      for (int k = 1; k <= 3; ++k)
        if (eps(i, j, k) != 0)
          rhs += GaussianRational(Rational(2 * eps(i, j, k))) * i_unit *
                 (LambdaPoly::lambda() * coordinate(k, Side::left));
      out.push_back(verify_identity(
          commutator(coordinate(i, Side::left), coordinate(j, Side::left)), rhs,
          "[x_" + std::to_string(i) + ",x_" + std::to_string(j) + "] = 2 i lam eps x_k"));
    }

  // [x_i, r] = 0
  for (int i = 1; i <= 3; ++i)
    out.push_back(verify_identity(commutator(coordinate(i, Side::left), radius()),
                                  OperatorPoly::zero(),
                                  "[x_" + std::to_string(i) + ", r] = 0"));

  // r^2 - sum x_j^2 = lambda^2
  {
    OperatorPoly s = radius() * radius();
    for (int j = 1; j <= 3; ++j) s -= coordinate(j, Side::left) * coordinate(j, Side::left);
    out.push_back(verify_identity(s, OperatorPoly::lambda(2), "r^2 - x_j^2 = lam^2"));
  }

  // [L_i, L_j] = i eps_ijk L_k
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      if (i == j) continue;
      OperatorPoly rhs;
      for (int k = 1; k <= 3; ++k)
        if (eps(i, j, k) != 0)
          rhs += GaussianRational(Rational(eps(i, j, k))) * i_unit * angular_momentum(k);
      out.push_back(verify_identity(commutator(angular_momentum(i), angular_momentum(j)), rhs,
                                    "[L_" + std::to_string(i) + ",L_" + std::to_string(j) +
                                        "] = i eps L_k"));
    }

  // [L_i, x^_j] = i eps_ijk x^_k (symmetrized positions)
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      OperatorPoly rhs;
      for (int k = 1; k <= 3; ++k)
        if (eps(i, j, k) != 0)
          rhs += GaussianRational(Rational(eps(i, j, k))) * i_unit * position_sym(k);
      out.push_back(verify_identity(commutator(angular_momentum(i), position_sym(j)), rhs,
                                    "[L_" + std::to_string(i) + ",x^_" + std::to_string(j) +
                                        "] = i eps x^_k"));
    }

  // Spinor laws: [L_j, a^_a] = -(1/2) sigma^j_ab a^_b,
  //              [L_j, a^+_a] = +(1/2) sigma^j_ba a^+_b
  // (forced by [L_i,L_j] = i eps L_k through the Jacobi identity)
  for (int j = 1; j <= 3; ++j)
    for (int a = 1; a <= 2; ++a) {
      OperatorPoly lhs = commutator(
          angular_momentum(j),
          OperatorPoly::generator(Generator{Family::left, static_cast<uint8_t>(a), false}));
      OperatorPoly rhs;
      for (int b = 1; b <= 2; ++b)
        rhs -= GaussianRational(Rational(1, 2)) *
               (pauli(j, a, b) *
                OperatorPoly::generator(Generator{Family::left, static_cast<uint8_t>(b), false}));
      out.push_back(verify_identity(lhs, rhs, "spinor law a, j=" + std::to_string(j) +
                                                  " a=" + std::to_string(a)));

      OperatorPoly lhsd = commutator(
          angular_momentum(j),
          OperatorPoly::generator(Generator{Family::left, static_cast<uint8_t>(a), true}));
      OperatorPoly rhsd;
      for (int b = 1; b <= 2; ++b)
        rhsd += GaussianRational(Rational(1, 2)) *
                (pauli(j, b, a) *
                 OperatorPoly::generator(Generator{Family::left, static_cast<uint8_t>(b), true}));
      out.push_back(verify_identity(lhsd, rhsd, "spinor law a^+, j=" + std::to_string(j) +
                                                    " a=" + std::to_string(a)));
    }

  // [a^_a, a^+_b] = delta_ab = -[b^_a, b^+_b]
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b) {
      OperatorPoly delta =
          a == b ? OperatorPoly::one() : OperatorPoly::zero();
      out.push_back(verify_identity(
          commutator(
              OperatorPoly::generator(Generator{Family::left, static_cast<uint8_t>(a), false}),
              OperatorPoly::generator(Generator{Family::left, static_cast<uint8_t>(b), true})),
          delta, "[a_" + std::to_string(a) + ", a^+_" + std::to_string(b) + "] = delta"));
      out.push_back(verify_identity(
          commutator(
              OperatorPoly::generator(Generator{Family::right, static_cast<uint8_t>(a), false}),
              OperatorPoly::generator(Generator{Family::right, static_cast<uint8_t>(b), true})),
          -delta, "[b_" + std::to_string(a) + ", b^+_" + std::to_string(b) + "] = -delta"));
    }

  // [c_a, c^+_b] = 0 and [c_a, c_b] = 0
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b) {
      out.push_back(verify_identity(commutator(c_operator(a), c_operator(b).adjoint()),
                                    OperatorPoly::zero(),
                                    "[c_" + std::to_string(a) + ", c^+_" + std::to_string(b) +
                                        "] = 0"));
      out.push_back(verify_identity(commutator(c_operator(a), c_operator(b)),
                                    OperatorPoly::zero(),
                                    "[c_" + std::to_string(a) + ", c_" + std::to_string(b) +
                                        "] = 0"));
    }

  // [x_ic, x_jc] = 0
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j)
      out.push_back(verify_identity(
          commutator(commutative_coordinate(i), commutative_coordinate(j)), OperatorPoly::zero(),
          "[x_" + std::to_string(i) + "c, x_" + std::to_string(j) + "c] = 0"));

  return out;
}

}  // namespace fuzzydynsym::ncalg
