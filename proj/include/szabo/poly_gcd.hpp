#pragma once

#include <map>
#include <optional>

#include "szabo/polynomial.hpp"

namespace szabo {

// Exact multivariate division.  Returns the quotient when divisor
// divides dividend exactly, nullopt otherwise.  Plain leading-term
// elimination in lex order; the leading monomial strictly decreases so
// the loop terminates.
inline std::optional<Polynomial> try_divide_exact(const Polynomial& dividend,
                                                  const Polynomial& divisor) {
  if (divisor.is_zero()) return std::nullopt;
  const std::size_t nv = dividend.nvars();
  Polynomial rem = dividend;
  Polynomial quot(nv);
  while (!rem.is_zero()) {
    const ExpVec& er = rem.leading_exponents();
    const ExpVec& ed = divisor.leading_exponents();
    ExpVec q(nv);
    for (std::size_t i = 0; i < nv; ++i) {
      if (er[i] < ed[i]) return std::nullopt;
      q[i] = er[i] - ed[i];
    }
    Polynomial t(nv);
    t.add_term(std::move(q), rem.leading_coeff() / divisor.leading_coeff());
    quot += t;
    rem -= t * divisor;
  }
  return quot;
}

namespace detail {

// Univariate view in variable v: degree -> coefficient polynomial
// (coefficients do not involve v).
using UniView = std::map<unsigned, Polynomial>;

inline UniView uni_view(const Polynomial& p, std::size_t v) {
  UniView view;
  for (const auto& [e, c] : p.terms()) {
    ExpVec rest = e;
    unsigned d = rest[v];
    rest[v] = 0;
    auto [it, ins] = view.try_emplace(d, Polynomial(p.nvars()));
    it->second.add_term(std::move(rest), c);
  }
  return view;
}

inline Polynomial from_uni_view(const UniView& view, std::size_t v, std::size_t nvars) {
  Polynomial p(nvars);
  for (const auto& [d, coeff] : view) {
    Polynomial vp = Polynomial::variable(nvars, v).pow(d);
    p += coeff * vp;
  }
  return p;
}

inline std::optional<std::size_t> lowest_variable(const Polynomial& a, const Polynomial& b) {
  for (std::size_t v = 0; v < a.nvars(); ++v)
    if (a.depends_on(v) || b.depends_on(v)) return v;
  return std::nullopt;
}

}  // namespace detail

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

namespace detail {

// Scale so the lex-leading coefficient is 1 (units are irrelevant for a
// gcd over the rationals).
inline Polynomial make_monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  return Rational(1) / p.leading_coeff() * p;
}

// Content of p viewed as univariate in v: gcd of its coefficients.
inline Polynomial content(const Polynomial& p, std::size_t v) {
  Polynomial g(p.nvars());
  for (const auto& [d, coeff] : uni_view(p, v)) {
    g = poly_gcd(g, coeff);
    if (!g.is_zero() && g.is_constant()) break;  // already a unit
  }
  return g;
}

// Pseudo-remainder of a by b, both viewed as univariate in v.
inline Polynomial pseudo_rem(Polynomial a, const Polynomial& b, std::size_t v) {
  const std::size_t nv = a.nvars();
  unsigned db = b.degree_in(v);
  UniView bv = uni_view(b, v);
  const Polynomial& lb = bv.rbegin()->second;
  while (!a.is_zero() && a.degree_in(v) >= db) {
    unsigned da = a.degree_in(v);
    UniView av = uni_view(a, v);
    const Polynomial& la = av.rbegin()->second;
    Polynomial shift = Polynomial::variable(nv, v).pow(da - db);
    a = lb * a - la * shift * b;
  }
  return a;
}

}  // namespace detail

// Gcd of multivariate polynomials over Q, normalized monic in the lex
// leading coefficient.  Primitive pseudo-remainder sequence, recursing
// on the content for the remaining variables.
inline Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return detail::make_monic(b);
  if (b.is_zero()) return detail::make_monic(a);
  if (a.is_constant() || b.is_constant())
    return Polynomial::constant(a.nvars(), Rational(1));
  auto v = detail::lowest_variable(a, b);
  if (!v) return Polynomial::constant(a.nvars(), Rational(1));  // nonzero constants
  if (!a.depends_on(*v) || !b.depends_on(*v)) {
    // One side is free of the main variable: gcd divides its content.
    Polynomial ca = detail::content(a, *v);
    Polynomial cb = detail::content(b, *v);
    return poly_gcd(ca, cb);
  }
  Polynomial ca = detail::content(a, *v);
  Polynomial cb = detail::content(b, *v);
  Polynomial cg = poly_gcd(ca, cb);
  Polynomial pa = *try_divide_exact(a, ca);
  Polynomial pb = *try_divide_exact(b, cb);
  if (pa.degree_in(*v) < pb.degree_in(*v)) std::swap(pa, pb);
  // Subresultant pseudo-remainder sequence: the per-step divisors are
  // known in closed form, so no content gcds are needed until the end.
  Polynomial g = Polynomial::constant(a.nvars(), Rational(1));
  Polynomial h = g;
  while (!pb.is_zero()) {
    // A nonzero v-free remainder means the v-primitive gcd is trivial.
    if (!pb.depends_on(*v)) return detail::make_monic(cg);
    unsigned delta = pa.degree_in(*v) - pb.degree_in(*v);
    Polynomial r = detail::pseudo_rem(pa, pb, *v);
    pa = pb;
    if (r.is_zero()) {
      pb = Polynomial(a.nvars());
      break;
    }
    pb = *try_divide_exact(r, g * h.pow(delta));
    g = detail::uni_view(pa, *v).rbegin()->second;
    if (delta > 0) h = *try_divide_exact(g.pow(delta), h.pow(delta - 1));
  }
  // pa is the gcd in v up to content; strip it and restore cg.
  Polynomial prim = *try_divide_exact(pa, detail::content(pa, *v));
  return detail::make_monic(cg * prim);
}

}  // namespace szabo
