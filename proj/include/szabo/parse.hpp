#pragma once

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "szabo/polynomial.hpp"
#include "szabo/vartable.hpp"

namespace szabo {

// Parse error with the 0-based character position where it occurred.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Recursive-descent parser for the expression grammar
//   expr     := term (('+'|'-') term)*
//   term     := factor ('*' factor)*
//   factor   := base ('^' uint)?
//   base     := ident | rational | '(' expr ')'
//   rational := int ('/' uint)?
// Whitespace is insignificant.  '/' outside a rational literal is an
// unsupported construct and reported as such.
class ExprParser {
 public:
  ExprParser(std::string_view text, const VarTable& vars) : text_(text), vars_(vars) {}

  Polynomial parse() {
    Polynomial p = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  Polynomial parse_expr() {
    Polynomial acc = parse_term();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        acc += parse_term();
      } else if (peek() == '-') {
        ++pos_;
        acc -= parse_term();
      } else {
        return acc;
      }
    }
  }

  Polynomial parse_term() {
    Polynomial acc = parse_factor();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        acc *= parse_factor();
      } else if (peek() == '/') {
        fail("division is unsupported outside rational literals");
      } else {
        return acc;
      }
    }
  }

  Polynomial parse_factor() {
    Polynomial base = parse_base();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      if (peek() == '-') fail("negative exponent");
      if (!std::isdigit(peek())) fail("exponent must be a nonnegative integer");
      unsigned long e = parse_uint();
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial parse_base() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial p = parse_expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return p;
    }
    if (c == '-' || std::isdigit(c)) return parse_rational();
    if (std::isalpha(c) || c == '_') return parse_ident();
    fail(c == '\0' ? "unexpected end of input" : "unexpected character");
  }

  Polynomial parse_rational() {
    std::size_t start = pos_;
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
      skip_ws();
      if (!std::isdigit(peek())) fail("expected digits after '-'");
    }
    mpz_class num(parse_digits());
    mpz_class den(1);
    skip_ws();
    if (peek() == '/') {
      ++pos_;
      skip_ws();
      if (!std::isdigit(peek())) fail("denominator must be a positive integer");
      den = mpz_class(parse_digits());
      if (den == 0) {
        pos_ = start;
        fail("zero denominator");
      }
    }
    Rational r(num, den);
    r.canonicalize();
    if (neg) r = -r;
    return Polynomial::constant(vars_.size(), r);
  }

  Polynomial parse_ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(text_[pos_]) || text_[pos_] == '_')) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    auto idx = vars_.find(name);
    if (!idx) throw ParseError("unknown identifier '" + name + "'", start);
    return Polynomial::variable(vars_.size(), *idx);
  }

  std::string parse_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  unsigned long parse_uint() { return std::stoul(parse_digits()); }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  std::string_view text_;
  const VarTable& vars_;
  std::size_t pos_ = 0;
};

inline Polynomial parse_expr(std::string_view text, const VarTable& vars) {
  return ExprParser(text, vars).parse();
}

// Deterministic canonical printer; output re-parses to the same
// polynomial.  Terms come out in lex order, largest first.
inline std::string to_string(const Polynomial& p, const VarTable& vars) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    // A leading negative coefficient is printed as a signed rational
    // literal so the output stays inside the grammar (no unary minus).
    Rational a = c;
    if (!first) {
      out << (sgn(a) < 0 ? " - " : " + ");
      a = abs(a);
    }
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += vars.name(i);
      if (e[i] > 1) mono += '^' + std::to_string(e[i]);
    }
    if (mono.empty())
      out << a.get_str();
    else if (a == 1)
      out << mono;
    else
      out << a.get_str() << '*' << mono;
    first = false;
  }
  return out.str();
}

}  // namespace szabo
