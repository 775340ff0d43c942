#pragma once

#include "hdc/circle_posterior.hpp"
#include "hdc/linalg.hpp"
#include "hdc/oracle.hpp"

namespace hdc {

struct Dc2Result {
  UnitVector estimate;        // unit vector in span{e1, e2}
  long rounds_used;           // always equal to the requested rounds
  CirclePosterior posterior;  // final posterior over the plane angle
};

// cos(theta)*e1 + sin(theta)*e2, renormalized to absorb rounding drift.
UnitVector embed(Angle theta, const UnitVector& e1, const UnitVector& e2);

// Bisection on the circle spanned by the orthonormal pair (e1, e2): `rounds`
// iterations of halving query -> oracle answer -> posterior reweighting,
// assuming flip rate rho, then the posterior MAP embedded back into R^d.
// Consumes exactly `rounds` logical oracle queries.
Dc2Result dc2(const UnitVector& e1, const UnitVector& e2, long rounds, double rho,
              SignOracle& oracle);

}  // namespace hdc
