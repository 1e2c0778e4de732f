#pragma once

#include <stdexcept>

#include "szabo/poly_gcd.hpp"
#include "szabo/polynomial.hpp"

namespace szabo {

// Rational function in canonical form: num/den coprime, den monic in
// the lex leading coefficient (so den == 1 for polynomials and the
// representation is unique).
class RationalFunction {
 public:
  explicit RationalFunction(std::size_t nvars = 0)
      : num_(nvars), den_(Polynomial::constant(nvars, Rational(1))) {}

  RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("RationalFunction: zero denominator");
    normalize();
  }

  // Implicit promotion from a polynomial.
  RationalFunction(Polynomial p)  // NOLINT
      : num_(std::move(p)), den_(Polynomial::constant(num_.nvars(), Rational(1))) {}

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  std::size_t nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }

  bool is_polynomial() const { return den_ == Polynomial::constant(nvars(), Rational(1)); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }

  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }

  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.num_.is_zero()) throw std::domain_error("RationalFunction: division by zero");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }

  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = Polynomial::constant(nvars(), Rational(1));
      return;
    }
    Polynomial g = poly_gcd(num_, den_);
    num_ = *try_divide_exact(num_, g);
    den_ = *try_divide_exact(den_, g);
    Rational lc = den_.leading_coeff();
    num_ = Rational(1) / lc * num_;
    den_ = Rational(1) / lc * den_;
  }

  Polynomial num_;
  Polynomial den_;
};

}  // namespace szabo
