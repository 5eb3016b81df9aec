#pragma once

// Recursive-descent parser for the textual operator-expression grammar used
// by the `verify` subcommand.
//
//   expr     := term (('+' | '-') term)*
//   term     := factor ('*' factor)*
//   factor   := primary ('^' uint)?
//   primary  := uint | 'i' | 'lam' | generator | builtin | '(' expr ')'
//             | '-' factor
//   generator := aL1 | aL2 | aL1d | aL2d | bR1 | bR2 | bR1d | bR2d
//   builtin  := comm(e, e) | adj(e) | x(j) | r | N | L(j) | c(alpha) | xc(i)
//   (x(j), r, N are the left-multiplication lifts of x_j, r, N)
//
// An equation `lhs == rhs` parses into the pair (lhs, rhs).

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "fuzzydynsym/ncalg.hpp"

namespace fuzzydynsym::parser {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

class ExprParser {
 public:
  explicit ExprParser(std::string text) : text_(std::move(text)) {}

  ncalg::OperatorPoly parse_expression() {
    ncalg::OperatorPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return p;
  }

  /// Parses `lhs == rhs`; returns nullopt when there is no `==`.
  std::optional<std::pair<ncalg::OperatorPoly, ncalg::OperatorPoly>> parse_equation() {
    ncalg::OperatorPoly lhs = expr();
    skip_ws();
    if (pos_ == text_.size()) return std::nullopt;
    expect("==");
    ncalg::OperatorPoly rhs = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return std::make_pair(std::move(lhs), std::move(rhs));
  }

 private:
  std::string text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(const std::string& s) {
    skip_ws();
    if (text_.compare(pos_, s.size(), s) != 0) throw ParseError("expected '" + s + "'", pos_);
    pos_ += s.size();
  }

  ncalg::OperatorPoly expr() {
    ncalg::OperatorPoly p = term();
    for (;;) {
      if (accept('+')) {
        p += term();
      } else if (lookahead_minus()) {
        ++pos_;
        p -= term();
      } else {
        return p;
      }
    }
  }

  // a '-' here is binary only when it does not begin `==`-free trailing junk;
  // unary minus is handled in primary, so any '-' at this level is binary.
  bool lookahead_minus() {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == '-';
  }

  ncalg::OperatorPoly term() {
    ncalg::OperatorPoly p = factor();
    while (accept('*')) p *= factor();
    return p;
  }

  ncalg::OperatorPoly factor() {
    ncalg::OperatorPoly p = primary();
    if (accept('^')) {
      unsigned e = parse_uint();
      p = p.pow(e);
    }
    return p;
  }

  unsigned parse_uint() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError("expected a non-negative integer", pos_);
    unsigned v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      v = v * 10 + static_cast<unsigned>(text_[pos_++] - '0');
    return v;
  }

  int parse_int_arg() {
    skip_ws();
    bool neg = accept('-');
    int v = static_cast<int>(parse_uint());
    return neg ? -v : v;
  }

  std::string parse_ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) throw ParseError("expected an identifier", start);
    return text_.substr(start, pos_ - start);
  }

  ncalg::OperatorPoly primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ncalg::OperatorPoly p = expr();
      expect(")");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      unsigned v = parse_uint();
      return GaussianRational(Rational(v)) * ncalg::OperatorPoly::one();
    }
    std::size_t start = pos_;
    std::string id = parse_ident();
    if (id == "i") return GaussianRational::unit_i() * ncalg::OperatorPoly::one();
    if (id == "lam") return ncalg::OperatorPoly::lambda();
    if (id == "r") return ncalg::radius();
    if (id == "N") return ncalg::number_op(ncalg::Side::left);
    if (auto g = generator_by_name(id)) return ncalg::OperatorPoly::generator(*g);
    if (id == "comm") {
      expect("(");
      ncalg::OperatorPoly a = expr();
      expect(",");
      ncalg::OperatorPoly b = expr();
      expect(")");
      return ncalg::commutator(a, b);
    }
    if (id == "adj") {
      expect("(");
      ncalg::OperatorPoly a = expr();
      expect(")");
      return a.adjoint();
    }
    if (id == "x" || id == "L" || id == "c" || id == "xc") {
      expect("(");
      int arg = parse_int_arg();
      expect(")");
      if (id == "x") return ncalg::coordinate(arg, ncalg::Side::left);
      if (id == "L") return ncalg::angular_momentum(arg);
      if (id == "c") return ncalg::c_operator(arg);
      return ncalg::commutative_coordinate(arg);
    }
    throw ParseError("unknown identifier '" + id + "'", start);
  }

  static std::optional<ncalg::Generator> generator_by_name(const std::string& id) {
    using ncalg::Family;
    for (int s = 0; s < ncalg::kNumGenerators; ++s)
      if (id == ncalg::slot_name(s)) return ncalg::Generator::from_slot(s);
    return std::nullopt;
  }
};

}  // namespace fuzzydynsym::parser
