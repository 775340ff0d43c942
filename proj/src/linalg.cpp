#include "hdc/linalg.hpp"

#include <cmath>

namespace hdc {

namespace {

double raw_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double raw_norm(const std::vector<double>& v) { return std::sqrt(raw_dot(v, v)); }

}  // namespace

UnitVector UnitVector::normalized(std::vector<double> v) {
  if (v.empty()) throw parameter_error("UnitVector: dimension must be >= 1");
  // Scale by the largest magnitude first so the squared norm cannot
  // underflow (or overflow) even for inputs near the double range limits.
  double amax = 0.0;
  for (double x : v) amax = std::max(amax, std::fabs(x));
  if (!(amax > 1e-300) || !std::isfinite(amax))
    throw degenerate_input("UnitVector: norm too small to normalize");
  for (double& x : v) x /= amax;
  const double n = raw_norm(v);
  for (double& x : v) x /= n;
  return UnitVector(std::move(v));
}

UnitVector UnitVector::axis(std::size_t dim, std::size_t index) {
  if (dim == 0) throw parameter_error("UnitVector::axis: dimension must be >= 1");
  if (index >= dim) throw parameter_error("UnitVector::axis: index out of range");
  std::vector<double> v(dim, 0.0);
  v[index] = 1.0;
  return UnitVector(std::move(v));
}

double dot(const UnitVector& a, const UnitVector& b) {
  if (a.dim() != b.dim()) throw parameter_error("dot: dimension mismatch");
  return raw_dot(a.coords(), b.coords());
}

double estimation_error(const UnitVector& a, const UnitVector& b) {
  if (a.dim() != b.dim()) throw parameter_error("estimation_error: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

UnitVector combine_unit(double c1, const UnitVector& e1, double c2, const UnitVector& e2) {
  if (e1.dim() != e2.dim()) throw parameter_error("combine_unit: dimension mismatch");
  std::vector<double> v(e1.dim());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = c1 * e1[i] + c2 * e2[i];
  const double n = raw_norm(v);
  if (!(n > 1e-300)) throw degenerate_input("combine_unit: coefficients give a zero vector");
  for (double& x : v) x /= n;
  return UnitVector(std::move(v));
}

UnitVector project_normalized(const UnitVector& h, const UnitVector& e1, const UnitVector& e2) {
  const double c1 = dot(h, e1);
  const double c2 = dot(h, e2);
  if (std::sqrt(c1 * c1 + c2 * c2) <= 1e-12)
    throw degenerate_input("project_normalized: projection is numerically zero");
  return combine_unit(c1, e1, c2, e2);
}

std::vector<UnitVector> gram_schmidt(const std::vector<std::vector<double>>& vectors) {
  if (vectors.empty()) return {};
  const std::size_t d = vectors.front().size();
  if (d == 0) throw parameter_error("gram_schmidt: dimension must be >= 1");
  if (vectors.size() > d)
    throw parameter_error("gram_schmidt: more vectors than dimensions");
  for (const auto& v : vectors)
    if (v.size() != d) throw parameter_error("gram_schmidt: dimension mismatch");

  std::vector<std::vector<double>> basis;
  basis.reserve(vectors.size());
  for (auto v : vectors) {
    // Two projection sweeps keep the Gram matrix near identity even for
    // nearly dependent input.
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (const auto& b : basis) {
        const double c = raw_dot(v, b);
        for (std::size_t i = 0; i < d; ++i) v[i] -= c * b[i];
      }
    }
    const double n = raw_norm(v);
    if (!(n >= 1e-10)) throw degenerate_input("gram_schmidt: vectors are linearly dependent");
    for (double& x : v) x /= n;
    basis.push_back(std::move(v));
  }

  std::vector<UnitVector> out;
  out.reserve(basis.size());
  for (auto& b : basis) out.push_back(UnitVector::normalized(std::move(b)));
  return out;
}

}  // namespace hdc
