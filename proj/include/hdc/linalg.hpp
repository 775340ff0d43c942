#pragma once

#include <cstddef>
#include <vector>

#include "hdc/errors.hpp"

namespace hdc {

// Dense unit-norm vector in R^d. All construction paths renormalize, so an
// instance always satisfies ||v|| = 1 up to rounding.
class UnitVector {
 public:
  // Normalizes v; throws degenerate_input if ||v|| <= 1e-300.
  static UnitVector normalized(std::vector<double> v);

  // Standard basis vector e_index in R^dim.
  static UnitVector axis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return v_.size(); }
  double operator[](std::size_t i) const noexcept { return v_[i]; }
  const std::vector<double>& coords() const noexcept { return v_; }

 private:
  explicit UnitVector(std::vector<double> v) noexcept : v_(std::move(v)) {}
  std::vector<double> v_;

  friend UnitVector combine_unit(double, const UnitVector&, double, const UnitVector&);
};

double dot(const UnitVector& a, const UnitVector& b);

// ||a - b||; always in [0, 2] for unit vectors.
double estimation_error(const UnitVector& a, const UnitVector& b);

// Normalized c1*e1 + c2*e2. (c1, c2) must not both be ~0.
UnitVector combine_unit(double c1, const UnitVector& e1, double c2, const UnitVector& e2);

// Normalized projection of h onto span{e1, e2}; throws degenerate_input when
// the projection norm is <= 1e-12.
UnitVector project_normalized(const UnitVector& h, const UnitVector& e1, const UnitVector& e2);

// Modified Gram-Schmidt with one reorthogonalization pass. Throws
// degenerate_input when a residual norm falls below 1e-10 (dependent input).
std::vector<UnitVector> gram_schmidt(const std::vector<std::vector<double>>& vectors);

}  // namespace hdc
