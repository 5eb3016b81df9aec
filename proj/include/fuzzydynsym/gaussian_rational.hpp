#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <map>
#include <sstream>
#include <string>

namespace fuzzydynsym {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact complex number with rational real and imaginary parts.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long r) : re(r) {}
  GaussianRational(long r, long i) : re(r), im(i) {}

  static GaussianRational unit_i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }

  GaussianRational conj() const { return {re, -im}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  /// Largest denominator appearing in either component.
  BigInt max_denominator() const {
    BigInt dr = boost::multiprecision::denominator(re);
    BigInt di = boost::multiprecision::denominator(im);
    return dr > di ? dr : di;
  }

  std::string to_string() const {
    std::ostringstream os;
    if (im == 0) {
      os << re;
    } else if (re == 0) {
      os << im << "*i";
    } else {
      os << "(" << re << (im > 0 ? "+" : "") << im << "*i)";
    }
    return os.str();
  }
};

/// Polynomial in the formal length parameter lambda over Gaussian rationals.
/// Lambda stays an indeterminate throughout the symbolic layer; it is only
/// substituted by a number when matrices are assembled.
class LambdaPoly {
 public:
  LambdaPoly() = default;
  LambdaPoly(GaussianRational c, unsigned lambda_power = 0) {
    if (!c.is_zero()) coeffs_[lambda_power] = std::move(c);
  }

  static LambdaPoly lambda(unsigned power = 1) { return LambdaPoly(GaussianRational(1), power); }

  bool is_zero() const { return coeffs_.empty(); }

  const std::map<unsigned, GaussianRational>& coeffs() const { return coeffs_; }

  LambdaPoly& operator+=(const LambdaPoly& o) {
    for (const auto& [p, c] : o.coeffs_) {
      auto it = coeffs_.find(p);
      if (it == coeffs_.end()) {
        coeffs_.emplace(p, c);
      } else {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
      }
    }
    return *this;
  }
  LambdaPoly& operator-=(const LambdaPoly& o) { return *this += -o; }
  friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
  friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }
  friend LambdaPoly operator-(const LambdaPoly& a) {
    LambdaPoly r;
    for (const auto& [p, c] : a.coeffs_) r.coeffs_.emplace(p, -c);
    return r;
  }
  friend LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b) {
    LambdaPoly r;
    for (const auto& [pa, ca] : a.coeffs_)
      for (const auto& [pb, cb] : b.coeffs_) {
        GaussianRational prod = ca * cb;
        if (prod.is_zero()) continue;
        auto it = r.coeffs_.find(pa + pb);
        if (it == r.coeffs_.end()) {
          r.coeffs_.emplace(pa + pb, std::move(prod));
        } else {
          it->second += prod;
          if (it->second.is_zero()) r.coeffs_.erase(it);
        }
      }
    return r;
  }
  LambdaPoly& operator*=(const LambdaPoly& o) { return *this = *this * o; }
  friend bool operator==(const LambdaPoly& a, const LambdaPoly& b) { return a.coeffs_ == b.coeffs_; }

  LambdaPoly conj() const {
    LambdaPoly r;
    for (const auto& [p, c] : coeffs_) r.coeffs_.emplace(p, c.conj());
    return r;
  }

  std::complex<double> eval(double lambda_value) const {
    std::complex<double> s{0.0, 0.0};
    for (const auto& [p, c] : coeffs_) {
      double lp = 1.0;
      for (unsigned k = 0; k < p; ++k) lp *= lambda_value;
      s += c.to_complex() * lp;
    }
    return s;
  }

  BigInt max_denominator() const {
    BigInt d{1};
    for (const auto& [p, c] : coeffs_) {
      BigInt cd = c.max_denominator();
      if (cd > d) d = cd;
    }
    return d;
  }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, c] : coeffs_) {
      if (!first) os << " + ";
      first = false;
      os << c.to_string();
      if (p == 1) os << "*lam";
      if (p > 1) os << "*lam^" << p;
    }
    return os.str();
  }

 private:
  std::map<unsigned, GaussianRational> coeffs_;
};

}  // namespace fuzzydynsym
