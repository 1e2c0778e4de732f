#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "szabo/polynomial.hpp"

namespace szabo {

enum class Slot { Upper, Lower };

// Dense variance-typed tensor field over the polynomial scalars.
// Coordinate index i corresponds to session variable index i (the table
// always starts with the coordinates), which is what makes partial
// derivatives of components well-defined.
class TensorField {
 public:
  TensorField(std::size_t dim, std::vector<Slot> variance, std::size_t nvars)
      : dim_(dim), variance_(std::move(variance)), nvars_(nvars) {
    std::size_t total = 1;
    for (std::size_t s = 0; s < variance_.size(); ++s) total *= dim_;
    comps_.assign(total, Polynomial(nvars_));
  }

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return variance_.size(); }
  std::size_t nvars() const { return nvars_; }
  const std::vector<Slot>& variance() const { return variance_; }
  std::size_t size() const { return comps_.size(); }

  std::size_t flat_index(std::span<const std::size_t> idx) const {
    if (idx.size() != rank()) throw std::invalid_argument("TensorField: wrong index count");
    std::size_t f = 0;
    for (std::size_t i : idx) {
      if (i >= dim_) throw std::out_of_range("TensorField: index out of range");
      f = f * dim_ + i;
    }
    return f;
  }

  Polynomial& at(std::initializer_list<std::size_t> idx) {
    return comps_[flat_index(std::span<const std::size_t>(idx.begin(), idx.size()))];
  }
  const Polynomial& at(std::initializer_list<std::size_t> idx) const {
    return comps_[flat_index(std::span<const std::size_t>(idx.begin(), idx.size()))];
  }
  Polynomial& at(std::span<const std::size_t> idx) { return comps_[flat_index(idx)]; }
  const Polynomial& at(std::span<const std::size_t> idx) const { return comps_[flat_index(idx)]; }

  Polynomial& flat(std::size_t i) { return comps_[i]; }
  const Polynomial& flat(std::size_t i) const { return comps_[i]; }

  bool is_zero() const {
    for (const auto& c : comps_)
      if (!c.is_zero()) return false;
    return true;
  }

  friend TensorField operator+(const TensorField& a, const TensorField& b) {
    a.check_shape(b);
    TensorField r = a;
    for (std::size_t i = 0; i < r.comps_.size(); ++i) r.comps_[i] += b.comps_[i];
    return r;
  }

  friend TensorField operator-(const TensorField& a, const TensorField& b) {
    a.check_shape(b);
    TensorField r = a;
    for (std::size_t i = 0; i < r.comps_.size(); ++i) r.comps_[i] -= b.comps_[i];
    return r;
  }

  friend TensorField operator*(const Rational& c, const TensorField& t) {
    TensorField r = t;
    for (auto& p : r.comps_) p = c * p;
    return r;
  }

  bool operator==(const TensorField& o) const {
    return dim_ == o.dim_ && variance_ == o.variance_ && comps_ == o.comps_;
  }

  // Walks all multi-indices in row-major order.
  template <typename F>
  void for_each_index(F&& f) const {
    std::vector<std::size_t> idx(rank(), 0);
    for (std::size_t flat = 0; flat < comps_.size(); ++flat) {
      f(std::span<const std::size_t>(idx));
      for (std::size_t s = rank(); s-- > 0;) {
        if (++idx[s] < dim_) break;
        idx[s] = 0;
      }
    }
  }

  // Trace over one upper and one lower slot.
  TensorField contract(std::size_t upper_slot, std::size_t lower_slot) const {
    if (upper_slot >= rank() || lower_slot >= rank() || upper_slot == lower_slot)
      throw std::invalid_argument("contract: bad slot indices");
    if (variance_[upper_slot] != Slot::Upper || variance_[lower_slot] != Slot::Lower)
      throw std::invalid_argument("contract: slots must be one upper, one lower");
    std::vector<Slot> var;
    for (std::size_t s = 0; s < rank(); ++s)
      if (s != upper_slot && s != lower_slot) var.push_back(variance_[s]);
    TensorField r(dim_, var, nvars_);
    r.for_each_index([&](std::span<const std::size_t> out) {
      std::vector<std::size_t> in(rank());
      std::size_t o = 0;
      for (std::size_t s = 0; s < rank(); ++s)
        if (s != upper_slot && s != lower_slot) in[s] = out[o++];
      Polynomial acc(nvars_);
      for (std::size_t k = 0; k < dim_; ++k) {
        in[upper_slot] = k;
        in[lower_slot] = k;
        acc += at(std::span<const std::size_t>(in));
      }
      r.at(out) = acc;
    });
    return r;
  }

  friend TensorField tensor_product(const TensorField& a, const TensorField& b) {
    if (a.dim_ != b.dim_ || a.nvars_ != b.nvars_)
      throw std::invalid_argument("tensor_product: mismatched tensors");
    std::vector<Slot> var = a.variance_;
    var.insert(var.end(), b.variance_.begin(), b.variance_.end());
    TensorField r(a.dim_, var, a.nvars_);
    for (std::size_t i = 0; i < a.comps_.size(); ++i)
      for (std::size_t j = 0; j < b.comps_.size(); ++j)
        r.comps_[i * b.comps_.size() + j] = a.comps_[i] * b.comps_[j];
    return r;
  }

 private:
  void check_shape(const TensorField& o) const {
    if (dim_ != o.dim_ || variance_ != o.variance_ || nvars_ != o.nvars_)
      throw std::invalid_argument("TensorField: shape mismatch");
  }

  std::size_t dim_;
  std::vector<Slot> variance_;
  std::size_t nvars_;
  std::vector<Polynomial> comps_;
};

}  // namespace szabo
