#pragma once

#include <stdexcept>
#include <vector>

#include "szabo/tensor.hpp"

namespace szabo {

// Torsion-free affine connection on an m-dimensional chart whose
// coordinates are session variables 0..m-1.  gamma(k,i,j) stores
// Christoffel symbol with the output index k and the symmetric lower
// pair (i,j).
class AffineConnection {
 public:
  AffineConnection(std::size_t dim, std::size_t nvars)
      : dim_(dim), nvars_(nvars), gamma_(dim * dim * dim, Polynomial(nvars)) {}

  static AffineConnection zero(std::size_t dim, std::size_t nvars) {
    return AffineConnection(dim, nvars);
  }

  std::size_t dim() const { return dim_; }
  std::size_t nvars() const { return nvars_; }

  const Polynomial& gamma(std::size_t k, std::size_t i, std::size_t j) const {
    return gamma_[flat(k, i, j)];
  }

  // Sets Gamma^k_{ij} = Gamma^k_{ji}.
  void set_gamma(std::size_t k, std::size_t i, std::size_t j, Polynomial value) {
    gamma_[flat(k, i, j)] = value;
    gamma_[flat(k, j, i)] = std::move(value);
  }

  bool is_zero() const {
    for (const auto& g : gamma_)
      if (!g.is_zero()) return false;
    return true;
  }

  bool operator==(const AffineConnection& o) const {
    return dim_ == o.dim_ && nvars_ == o.nvars_ && gamma_ == o.gamma_;
  }

 private:
  std::size_t flat(std::size_t k, std::size_t i, std::size_t j) const {
    if (k >= dim_ || i >= dim_ || j >= dim_) throw std::out_of_range("AffineConnection: index");
    return (k * dim_ + i) * dim_ + j;
  }

  std::size_t dim_;
  std::size_t nvars_;
  std::vector<Polynomial> gamma_;
};

// Covariant derivative with the new lower (derivative) slot prepended:
// result[a, i1..ik] = (nabla_a T)_{i1..ik}.  Reduces to slotwise
// partial derivatives when all Gamma vanish.
inline TensorField covariant_derivative(const TensorField& t, const AffineConnection& conn) {
  if (conn.dim() != t.dim()) throw std::invalid_argument("covariant_derivative: dimension mismatch");
  const std::size_t m = t.dim();
  std::vector<Slot> var;
  var.push_back(Slot::Lower);
  var.insert(var.end(), t.variance().begin(), t.variance().end());
  TensorField r(m, var, t.nvars());
  r.for_each_index([&](std::span<const std::size_t> out) {
    const std::size_t a = out[0];
    std::vector<std::size_t> in(out.begin() + 1, out.end());
    Polynomial acc = t.at(std::span<const std::size_t>(in)).diff(a);
    for (std::size_t s = 0; s < t.rank(); ++s) {
      const std::size_t orig = in[s];
      for (std::size_t l = 0; l < m; ++l) {
        in[s] = l;
        const Polynomial& comp = t.at(std::span<const std::size_t>(in));
        if (comp.is_zero()) continue;
        if (t.variance()[s] == Slot::Upper)
          acc += conn.gamma(orig, a, l) * comp;
        else
          acc -= conn.gamma(l, a, orig) * comp;
      }
      in[s] = orig;
    }
    r.at(out) = std::move(acc);
  });
  return r;
}

// Curvature tensor with the pinned sign convention
//   R(d_k, d_j) d_i = R^h_{kji} d_h,
//   R^h_{kji} = d_k G^h_{ji} - d_j G^h_{ki} + G^h_{kl} G^l_{ji} - G^h_{jl} G^l_{ki},
// stored with slot order [k, j, i, h], h upper.
inline TensorField curvature(const AffineConnection& conn) {
  const std::size_t m = conn.dim();
  TensorField r(m, {Slot::Lower, Slot::Lower, Slot::Lower, Slot::Upper}, conn.nvars());
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t h = 0; h < m; ++h) {
          Polynomial acc = conn.gamma(h, j, i).diff(k) - conn.gamma(h, k, i).diff(j);
          for (std::size_t l = 0; l < m; ++l)
            acc += conn.gamma(h, k, l) * conn.gamma(l, j, i) -
                   conn.gamma(h, j, l) * conn.gamma(l, k, i);
          r.at({j, k, i, h}) = -acc;
          r.at({k, j, i, h}) = std::move(acc);
        }
  return r;
}

// Ric(Y, Z) = trace(X -> R(X, Y) Z); slots [Y, Z].  Not symmetric in
// general for affine connections.
inline TensorField ricci(const AffineConnection& conn) {
  return curvature(conn).contract(3, 0);
}

inline bool is_flat(const AffineConnection& conn) { return curvature(conn).is_zero(); }

// Sum of the components of the fully cyclic-symmetrized nabla Ric;
// identically zero iff the Ricci tensor is cyclic parallel (L3-space).
inline TensorField cyclic_parallel_ricci_residuals(const AffineConnection& conn) {
  TensorField d = covariant_derivative(ricci(conn), conn);
  const std::size_t m = conn.dim();
  TensorField r(m, {Slot::Lower, Slot::Lower, Slot::Lower}, conn.nvars());
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t z = 0; z < m; ++z)
        r.at({x, y, z}) = d.at({x, y, z}) + d.at({y, z, x}) + d.at({z, x, y});
  return r;
}

}  // namespace szabo
