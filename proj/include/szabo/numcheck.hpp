#pragma once

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "szabo/matrix.hpp"
#include "szabo/polynomial.hpp"
#include "szabo/tensor.hpp"

namespace szabo {

// Sampling plan for the numeric oracle.  Exact rational evaluation is
// used wherever possible; floats appear only in the finite-difference
// checks.
struct SamplePlan {
  unsigned long seed = 1;
  int count = 100;
  Rational box_lo = Rational(-2);
  Rational box_hi = Rational(2);
  unsigned max_denominator = 16;
  double fd_step = 1e-5;
  double tol_rel = 1e-6;

  void validate() const {
    if (count < 1) throw std::invalid_argument("SamplePlan: count must be >= 1");
    if (fd_step <= 0) throw std::invalid_argument("SamplePlan: fd_step must be positive");
    if (tol_rel <= 0) throw std::invalid_argument("SamplePlan: tol_rel must be positive");
  }
};

struct Report {
  std::vector<std::string> lines;
  int failures = 0;

  void pass(std::string line) { lines.push_back("ok    " + std::move(line)); }
  void fail(std::string line) {
    lines.push_back("FAIL  " + std::move(line));
    ++failures;
  }

  bool empty_of_failures() const { return failures == 0; }

  std::string to_string() const {
    std::string out;
    for (const auto& l : lines) {
      out += l;
      out += '\n';
    }
    return out;
  }
};

namespace detail {

// Denominator-bounded rational in [lo, hi]; deterministic for a given
// generator state.
inline Rational random_rational(std::mt19937_64& rng, const SamplePlan& plan) {
  std::uniform_int_distribution<unsigned> dend(1, plan.max_denominator);
  unsigned den = dend(rng);
  mpz_class lo_num = mpz_class(plan.box_lo.get_num() * den) / plan.box_lo.get_den();
  mpz_class hi_num = mpz_class(plan.box_hi.get_num() * den) / plan.box_hi.get_den();
  std::uniform_int_distribution<long> numd(lo_num.get_si(), hi_num.get_si());
  Rational r(numd(rng), den);
  r.canonicalize();
  return r;
}

inline std::vector<Rational> random_point(std::mt19937_64& rng, const SamplePlan& plan,
                                          std::size_t nvars) {
  std::vector<Rational> pt;
  for (std::size_t i = 0; i < nvars; ++i) pt.push_back(random_rational(rng, plan));
  return pt;
}

inline std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

}  // namespace detail

// Central-difference check of diff() at sampled points.  Failures are
// data, not errors.
inline Report fd_check_derivative(const Polynomial& p, std::size_t v, const SamplePlan& plan) {
  plan.validate();
  Report rep;
  Polynomial d = p.diff(v);
  std::mt19937_64 rng(plan.seed);
  for (int s = 0; s < plan.count; ++s) {
    std::vector<Rational> q = detail::random_point(rng, plan, p.nvars());
    std::vector<double> x(p.nvars());
    for (std::size_t i = 0; i < p.nvars(); ++i) x[i] = rational_to_double(q[i]);
    std::vector<double> xp = x, xm = x;
    xp[v] += plan.fd_step;
    xm[v] -= plan.fd_step;
    double fd = (p.eval_double(xp) - p.eval_double(xm)) / (2 * plan.fd_step);
    double exact = d.eval_double(x);
    double scale = std::max(1.0, std::abs(exact));
    double err = std::abs(fd - exact);
    std::string loc = "fd var=" + std::to_string(v) + " sample=" + std::to_string(s) +
                      " fd=" + detail::fmt_double(fd) + " exact=" + detail::fmt_double(exact);
    if (err <= plan.tol_rel * scale)
      rep.pass(loc);
    else
      rep.fail(loc + " err=" + detail::fmt_double(err));
  }
  return rep;
}

// Exact nilpotency witness: evaluate M at a rational point and raise it
// to the matrix dimension.
inline Report numeric_nilpotency_probe(const PolyMatrix& m, const std::vector<Rational>& point) {
  Report rep;
  const std::size_t n = m.size();
  auto a = m.eval(point);
  auto mat_mul = [n](const std::vector<std::vector<Rational>>& x,
                     const std::vector<std::vector<Rational>>& y) {
    std::vector<std::vector<Rational>> r(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (x[i][k] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) r[i][j] += x[i][k] * y[k][j];
      }
    return r;
  };
  auto power = a;
  for (std::size_t k = 1; k < n; ++k) power = mat_mul(power, a);
  bool zero = true;
  for (const auto& row : power)
    for (const auto& e : row)
      if (e != 0) zero = false;
  std::string loc = "nilpotency M^" + std::to_string(n);
  if (zero)
    rep.pass(loc + " = 0");
  else
    rep.fail(loc + " != 0");
  return rep;
}

// Componentwise exact comparison of two same-shape tensors at sampled
// rational points; mismatches are reported with indices and point.
inline Report cross_validate(const TensorField& a, const TensorField& b, const SamplePlan& plan) {
  plan.validate();
  if (a.dim() != b.dim() || a.variance() != b.variance() || a.nvars() != b.nvars())
    throw std::invalid_argument("cross_validate: shape mismatch");
  Report rep;
  std::mt19937_64 rng(plan.seed);
  for (int s = 0; s < plan.count; ++s) {
    std::vector<Rational> pt = detail::random_point(rng, plan, a.nvars());
    bool ok = true;
    std::string mismatch;
    a.for_each_index([&](std::span<const std::size_t> idx) {
      if (!ok) return;
      Rational va = a.at(idx).eval(pt);
      Rational vb = b.at(idx).eval(pt);
      if (va != vb) {
        ok = false;
        mismatch = "component (";
        for (std::size_t i = 0; i < idx.size(); ++i)
          mismatch += (i ? "," : "") + std::to_string(idx[i]);
        mismatch += ") " + rational_to_string(va) + " vs " + rational_to_string(vb);
      }
    });
    std::string loc = "cross sample=" + std::to_string(s);
    if (ok)
      rep.pass(loc);
    else
      rep.fail(loc + " " + mismatch);
  }
  return rep;
}

}  // namespace szabo
