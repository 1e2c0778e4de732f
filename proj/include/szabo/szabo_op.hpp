#pragma once

#include <stdexcept>
#include <vector>

#include "szabo/connection.hpp"
#include "szabo/matrix.hpp"
#include "szabo/tensor.hpp"

namespace szabo {

// X = sum_i components[i] d_i with polynomial components (typically the
// fresh indeterminates a_i, or concrete rationals).
struct SymbolicVector {
  std::vector<Polynomial> components;

  std::size_t dim() const { return components.size(); }

  static SymbolicVector from_vars(std::size_t dim, std::size_t nvars, std::size_t first_var) {
    SymbolicVector x;
    for (std::size_t i = 0; i < dim; ++i)
      x.components.push_back(Polynomial::variable(nvars, first_var + i));
    return x;
  }

  static SymbolicVector from_rationals(std::size_t nvars, const std::vector<Rational>& vals) {
    SymbolicVector x;
    for (const auto& v : vals) x.components.push_back(Polynomial::constant(nvars, v));
    return x;
  }
};

// Coefficients c_0..c_{n-1} of det(lambda I - M) = lambda^n
// + c_{n-1} lambda^{n-1} + ... + c_0.  Nilpotency of M is exactly the
// identical vanishing of every stored coefficient.
struct CharPolyCertificate {
  std::size_t degree = 0;
  std::vector<Polynomial> coeffs;
  bool nilpotent = false;

  bool operator==(const CharPolyCertificate& o) const {
    return degree == o.degree && coeffs == o.coeffs && nilpotent == o.nilpotent;
  }
};

// Faddeev-LeVerrier over the commutative polynomial ring; division is
// only ever by integers, which is exact on rational coefficients.
inline CharPolyCertificate charpoly(const PolyMatrix& m) {
  const std::size_t n = m.size();
  CharPolyCertificate cert;
  cert.degree = n;
  cert.coeffs.assign(n, Polynomial(m.nvars()));
  PolyMatrix b = PolyMatrix::identity(n, m.nvars());
  for (std::size_t k = 1; k <= n; ++k) {
    b = m * b;
    Polynomial c = make_rational(-1, static_cast<unsigned long>(k)) * b.trace();
    cert.coeffs[n - k] = c;
    for (std::size_t i = 0; i < n; ++i) b.at(i, i) += c;
  }
  cert.nilpotent = true;
  for (const auto& c : cert.coeffs)
    if (!c.is_zero()) {
      cert.nilpotent = false;
      break;
    }
  return cert;
}

// Szabo operator from a precomputed nabla R (slots [a, k, j, i, h]):
//   S(X)Y = (nabla_X R)(Y, X) X,  M[h][y] = sum X^a X^b X^c DR[a,y,b,c,h].
inline PolyMatrix szabo_operator_from_dcurv(const TensorField& dcurv, const SymbolicVector& x) {
  const std::size_t m = dcurv.dim();
  if (x.dim() != m) throw std::invalid_argument("szabo_operator: dimension mismatch");
  PolyMatrix s(m, dcurv.nvars());
  for (std::size_t h = 0; h < m; ++h)
    for (std::size_t y = 0; y < m; ++y) {
      Polynomial acc(dcurv.nvars());
      for (std::size_t a = 0; a < m; ++a) {
        if (x.components[a].is_zero()) continue;
        for (std::size_t b = 0; b < m; ++b) {
          if (x.components[b].is_zero()) continue;
          for (std::size_t c = 0; c < m; ++c) {
            if (x.components[c].is_zero()) continue;
            const Polynomial& comp = dcurv.at({a, y, b, c, h});
            if (comp.is_zero()) continue;
            acc += x.components[a] * x.components[b] * x.components[c] * comp;
          }
        }
      }
      s.at(h, y) = std::move(acc);
    }
  return s;
}

inline PolyMatrix szabo_operator(const AffineConnection& conn, const SymbolicVector& x) {
  if (x.dim() != conn.dim()) throw std::invalid_argument("szabo_operator: dimension mismatch");
  return szabo_operator_from_dcurv(covariant_derivative(curvature(conn), conn), x);
}

// Chart-global affine Szabo decision: S is built with fully symbolic
// vector components (variables alpha_first..alpha_first+n-1) and a
// symbolic base point, so identical vanishing of the non-leading
// charpoly coefficients certifies the property at every point at once.
inline CharPolyCertificate is_affine_szabo(const AffineConnection& conn, std::size_t alpha_first) {
  SymbolicVector x = SymbolicVector::from_vars(conn.dim(), conn.nvars(), alpha_first);
  return charpoly(szabo_operator(conn, x));
}

}  // namespace szabo
