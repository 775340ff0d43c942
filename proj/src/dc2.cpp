#include "hdc/dc2.hpp"

#include <cmath>

namespace hdc {

UnitVector embed(Angle theta, const UnitVector& e1, const UnitVector& e2) {
  return combine_unit(std::cos(theta.radians()), e1, std::sin(theta.radians()), e2);
}

Dc2Result dc2(const UnitVector& e1, const UnitVector& e2, long rounds, double rho,
              SignOracle& oracle) {
  if (rounds < 1) throw parameter_error("dc2: rounds must be >= 1");
  if (!(rho >= 0.0 && rho < 0.5)) throw parameter_error("dc2: rho must be in [0, 1/2)");
  if (e1.dim() != e2.dim()) throw parameter_error("dc2: dimension mismatch");
  if (std::fabs(dot(e1, e1) - 1.0) > 1e-9 || std::fabs(dot(e2, e2) - 1.0) > 1e-9 ||
      std::fabs(dot(e1, e2)) > 1e-9)
    throw parameter_error("dc2: e1, e2 must be orthonormal within 1e-9");

  auto session = oracle.open_plane(e1, e2);
  CirclePosterior posterior = CirclePosterior::uniform();
  for (long m = 0; m < rounds; ++m) {
    const Angle x = posterior.halving_query();
    const int s = session->query(std::cos(x.radians()), std::sin(x.radians()));
    posterior = posterior.updated(x, s, rho);
  }
  const Angle at = posterior.map_estimate();
  return Dc2Result{embed(at, e1, e2), rounds, std::move(posterior)};
}

}  // namespace hdc
