#pragma once

#include <stdexcept>
#include <vector>

#include "szabo/polynomial.hpp"

namespace szabo {

// Square matrix over the polynomial ring.
class PolyMatrix {
 public:
  PolyMatrix(std::size_t n, std::size_t nvars)
      : n_(n), nvars_(nvars), m_(n * n, Polynomial(nvars)) {}

  static PolyMatrix identity(std::size_t n, std::size_t nvars) {
    PolyMatrix r(n, nvars);
    for (std::size_t i = 0; i < n; ++i) r.at(i, i) = Polynomial::constant(nvars, Rational(1));
    return r;
  }

  std::size_t size() const { return n_; }
  std::size_t nvars() const { return nvars_; }

  Polynomial& at(std::size_t i, std::size_t j) { return m_[i * n_ + j]; }
  const Polynomial& at(std::size_t i, std::size_t j) const { return m_[i * n_ + j]; }

  bool is_zero() const {
    for (const auto& p : m_)
      if (!p.is_zero()) return false;
    return true;
  }

  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
    a.check(b);
    PolyMatrix r = a;
    for (std::size_t i = 0; i < r.m_.size(); ++i) r.m_[i] += b.m_[i];
    return r;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    a.check(b);
    PolyMatrix r(a.n_, a.nvars_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < a.n_; ++j) {
          if (b.at(k, j).is_zero()) continue;
          r.at(i, j) += a.at(i, k) * b.at(k, j);
        }
      }
    return r;
  }

  friend PolyMatrix operator*(const Rational& c, const PolyMatrix& a) {
    PolyMatrix r = a;
    for (auto& p : r.m_) p = c * p;
    return r;
  }

  friend PolyMatrix operator*(const Polynomial& c, const PolyMatrix& a) {
    PolyMatrix r = a;
    for (auto& p : r.m_) p = c * p;
    return r;
  }

  PolyMatrix transpose() const {
    PolyMatrix r(n_, nvars_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  Polynomial trace() const {
    Polynomial t(nvars_);
    for (std::size_t i = 0; i < n_; ++i) t += at(i, i);
    return t;
  }

  bool operator==(const PolyMatrix& o) const {
    return n_ == o.n_ && nvars_ == o.nvars_ && m_ == o.m_;
  }

  // Matrix-vector product with a polynomial vector.
  std::vector<Polynomial> apply(const std::vector<Polynomial>& x) const {
    if (x.size() != n_) throw std::invalid_argument("PolyMatrix::apply: size mismatch");
    std::vector<Polynomial> y(n_, Polynomial(nvars_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) y[i] += at(i, j) * x[j];
    return y;
  }

  // Exact evaluation to a rational matrix.
  std::vector<std::vector<Rational>> eval(const std::vector<Rational>& point) const {
    std::vector<std::vector<Rational>> r(n_, std::vector<Rational>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r[i][j] = at(i, j).eval(point);
    return r;
  }

 private:
  void check(const PolyMatrix& o) const {
    if (n_ != o.n_ || nvars_ != o.nvars_) throw std::invalid_argument("PolyMatrix: size mismatch");
  }

  std::size_t n_;
  std::size_t nvars_;
  std::vector<Polynomial> m_;
};

}  // namespace szabo
