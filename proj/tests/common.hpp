#pragma once

#include <random>
#include <string>
#include <vector>

#include "szabo/connection.hpp"
#include "szabo/parse.hpp"
#include "szabo/polynomial.hpp"
#include "szabo/vartable.hpp"

namespace szabo::testutil {

// Standard session layout for a base of dimension n: coordinates
// u1..u_{2n} (base then fiber), vector components a1..a_{2n}, spectral
// variable L last.
struct Session {
  std::size_t n;
  VarTable vars;

  explicit Session(std::size_t base_dim) : n(base_dim), vars(make_names(base_dim)) {}

  std::size_t nvars() const { return vars.size(); }
  std::size_t alpha_first() const { return 2 * n; }

  Polynomial expr(const std::string& text) const { return parse_expr(text, vars); }

  static std::vector<std::string> make_names(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= 2 * n; ++i) names.push_back("u" + std::to_string(i));
    for (std::size_t i = 1; i <= 2 * n; ++i) names.push_back("a" + std::to_string(i));
    names.push_back("L");
    return names;
  }
};

// The three-parameter connection family on a 3-dimensional chart:
// nabla_1 d_1 = f1 d_2, nabla_2 d_2 = f2 d_2, nabla_3 d_3 = f3 d_2.
inline AffineConnection family31(const Session& s, const Polynomial& f1, const Polynomial& f2,
                                 const Polynomial& f3) {
  AffineConnection conn(3, s.nvars());
  conn.set_gamma(1, 0, 0, f1);
  conn.set_gamma(1, 1, 1, f2);
  conn.set_gamma(1, 2, 2, f3);
  return conn;
}

// The non-flat nilpotent example: f1 = u1*u3, f2 = 0, f3 = u1 + u3.
inline AffineConnection example36(const Session& s) {
  return family31(s, s.expr("u1*u3"), Polynomial(s.nvars()), s.expr("u1 + u3"));
}

// The cyclic-parallel violator: f1 = 0, f2 = u1, f3 = 0.
inline AffineConnection non_szabo_witness(const Session& s) {
  return family31(s, Polynomial(s.nvars()), s.expr("u1"), Polynomial(s.nvars()));
}

inline Polynomial random_poly(std::mt19937& rng, std::size_t nvars, std::size_t ncoords,
                              unsigned max_deg, int max_terms) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> coeff(-4, 4);
  Polynomial p(nvars);
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    ExpVec e(nvars);
    unsigned budget = max_deg;
    for (std::size_t i = 0; i < ncoords && budget; ++i) {
      std::uniform_int_distribution<unsigned> d(0, budget);
      e[i] = d(rng);
      budget -= e[i];
    }
    p.add_term(std::move(e), Rational(coeff(rng)));
  }
  return p;
}

// Random torsion-free polynomial connection with entries in the first
// ncoords coordinates.
inline AffineConnection random_connection(std::mt19937& rng, const Session& s, std::size_t dim,
                                          unsigned max_deg = 2, int max_terms = 2) {
  AffineConnection conn(dim, s.nvars());
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i; j < dim; ++j)
        conn.set_gamma(k, i, j, random_poly(rng, s.nvars(), dim, max_deg, max_terms));
  return conn;
}

}  // namespace szabo::testutil
