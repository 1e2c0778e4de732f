#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "szabo/rational.hpp"

namespace szabo {

using ExpVec = std::vector<unsigned>;

// Monomial order: lexicographic in VarTable order, largest first, so
// begin() of the term map is the leading term.
struct LexGreater {
  bool operator()(const ExpVec& a, const ExpVec& b) const { return a > b; }
};

// Sparse multivariate polynomial with exact rational coefficients.
// Canonical form: no stored coefficient is zero, every exponent vector
// has length nvars().  Equality of mathematical polynomials is equality
// of representations.
class Polynomial {
 public:
  using TermMap = std::map<ExpVec, Rational, LexGreater>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial zero(std::size_t nvars) { return Polynomial(nvars); }

  static Polynomial constant(std::size_t nvars, Rational c) {
    Polynomial p(nvars);
    p.add_term(ExpVec(nvars, 0), std::move(c));
    return p;
  }

  static Polynomial variable(std::size_t nvars, std::size_t idx) {
    if (idx >= nvars) throw std::invalid_argument("Polynomial::variable: index out of range");
    Polynomial p(nvars);
    ExpVec e(nvars, 0);
    e[idx] = 1;
    p.add_term(std::move(e), Rational(1));
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == ExpVec(nvars_, 0));
  }

  // Constant term (the whole value when is_constant()).
  Rational constant_value() const {
    auto it = terms_.find(ExpVec(nvars_, 0));
    return it == terms_.end() ? Rational(0) : it->second;
  }

  // Leading (lex-greatest) coefficient; 0 for the zero polynomial.
  Rational leading_coeff() const {
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
  }

  const ExpVec& leading_exponents() const {
    if (terms_.empty()) throw std::logic_error("leading_exponents of zero polynomial");
    return terms_.begin()->first;
  }

  void add_term(ExpVec e, Rational c) {
    if (e.size() != nvars_) throw std::invalid_argument("Polynomial: exponent vector length mismatch");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(std::move(e), std::move(c));
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    check_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  Polynomial operator-() const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_ring(b);
    Polynomial r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        ExpVec e(a.nvars_);
        for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(std::move(e), ca * cb);
      }
    return r;
  }

  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator*(const Rational& c, const Polynomial& p) {
    Polynomial r(p.nvars_);
    if (c == 0) return r;
    for (const auto& [e, pc] : p.terms_) r.terms_.emplace(e, c * pc);
    return r;
  }

  friend Polynomial operator*(const Polynomial& p, const Rational& c) { return c * p; }

  Polynomial pow(unsigned n) const {
    Polynomial r = constant(nvars_, Rational(1));
    Polynomial base = *this;
    while (n) {
      if (n & 1) r = r * base;
      base = base * base;
      n >>= 1;
    }
    return r;
  }

  bool operator==(const Polynomial& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }

  // Exact partial derivative with respect to variable v.
  Polynomial diff(std::size_t v) const {
    if (v >= nvars_) throw std::invalid_argument("Polynomial::diff: variable out of range");
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[v] == 0) continue;
      ExpVec d = e;
      d[v] -= 1;
      r.add_term(std::move(d), c * Rational(e[v]));
    }
    return r;
  }

  // Exact evaluation at a rational point (length = nvars).
  Rational eval(std::span<const Rational> point) const {
    if (point.size() != nvars_) throw std::invalid_argument("Polynomial::eval: point length mismatch");
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
      acc += t;
    }
    return acc;
  }

  Rational eval(const std::vector<Rational>& point) const {
    return eval(std::span<const Rational>(point));
  }

  double eval_double(std::span<const double> point) const {
    if (point.size() != nvars_) throw std::invalid_argument("Polynomial::eval_double: point length mismatch");
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
      double t = rational_to_double(c);
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
      acc += t;
    }
    return acc;
  }

  // Substitute a polynomial for variable v.
  Polynomial substitute(std::size_t v, const Polynomial& value) const {
    if (v >= nvars_) throw std::invalid_argument("Polynomial::substitute: variable out of range");
    check_ring(value);
    std::map<unsigned, Polynomial> by_power;  // exponent of v -> rest
    for (const auto& [e, c] : terms_) {
      ExpVec rest = e;
      unsigned k = rest[v];
      rest[v] = 0;
      auto [it, inserted] = by_power.try_emplace(k, Polynomial(nvars_));
      it->second.add_term(std::move(rest), c);
    }
    Polynomial r(nvars_);
    Polynomial vpow = constant(nvars_, Rational(1));
    unsigned cur = 0;
    for (const auto& [k, part] : by_power) {
      for (; cur < k; ++cur) vpow = vpow * value;
      r += part * vpow;
    }
    return r;
  }

  unsigned degree_in(std::size_t v) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_)
      if (e[v] > d) d = e[v];
    return d;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
      unsigned s = 0;
      for (unsigned x : e) s += x;
      if (s > d) d = s;
    }
    return d;
  }

  bool depends_on(std::size_t v) const { return degree_in(v) > 0; }

 private:
  void check_ring(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("Polynomial: mixed variable tables");
  }

  std::size_t nvars_;
  TermMap terms_;
};

}  // namespace szabo
