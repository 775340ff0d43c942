#pragma once

#include <cstddef>
#include <vector>

#include "hdc/errors.hpp"

namespace hdc {

inline constexpr double kPi = 3.141592653589793;
inline constexpr double kTwoPi = 6.283185307179586;

// Angle in radians, kept canonical: 0 <= radians() < 2*pi.
class Angle {
 public:
  Angle() = default;
  explicit Angle(double radians) noexcept : rad_(canonical(radians)) {}

  double radians() const noexcept { return rad_; }

  // Reduce into [0, 2*pi).
  static double canonical(double radians) noexcept;

  friend bool operator==(Angle a, Angle b) noexcept { return a.rad_ == b.rad_; }

 private:
  double rad_ = 0.0;
};

// Half-open arc [start, start + length) on the circle, 0 < length <= 2*pi.
struct Arc {
  Arc(Angle start_, double length_);
  Angle start;
  double length;
};

// Piecewise-constant probability density on the unit circle. Sector k spans
// [breakpoints[k], breakpoints[k+1]) with the last sector wrapping back to
// breakpoints[0]. Densities are >= 0 and integrate to 1; adjacent sectors
// with equal densities (relative tolerance 1e-12) are merged eagerly, so a
// posterior after m updates has at most 2m+1 sectors.
class CirclePosterior {
 public:
  // Uniform density 1/(2*pi), single sector anchored at 0.
  static CirclePosterior uniform();

  // Builds from explicit sectors; validates ordering, non-negativity and
  // total mass (within 1e-9), then merges equal neighbours.
  static CirclePosterior from_sectors(std::vector<double> breakpoints,
                                      std::vector<double> densities);

  std::size_t sector_count() const noexcept { return breakpoints_.size(); }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<double>& densities() const noexcept { return densities_; }
  double sector_length(std::size_t k) const noexcept;

  double density_at(Angle a) const noexcept;
  double total_mass() const noexcept;
  double mass(const Arc& arc) const noexcept;

  // Query direction whose diameter splits the mass in half: the smallest
  // theta >= 0 with mass([theta, theta+pi)) = 1/2 is located by a sweep over
  // the kink angles and the returned query is x = theta + pi/2. The returned
  // x satisfies |mass([x-pi/2, x+pi/2)) - 1/2| <= max(1e-9, p_max * 5e-16):
  // once the posterior concentrates into sectors a few ulps wide, the mass
  // balance is limited by the angular resolution of doubles, and the query
  // is the best representable angle rather than an exact split.
  Angle halving_query() const;

  // Posterior after observing `sign` (+1 or -1) for the diameter query at
  // `query`: density on the agreeing half {h : sign<x(query), x(h)> = sign}
  // is scaled by 2(1-rho), the other half by 2*rho, then the result is
  // renormalized and equal neighbours are merged. rho in [0, 1/2).
  CirclePosterior updated(Angle query, int sign, double rho) const;

  // Midpoint of the highest-density sector; ties resolve to the first such
  // sector in breakpoint order.
  Angle map_estimate() const noexcept;

 private:
  CirclePosterior(std::vector<double> b, std::vector<double> d) noexcept
      : breakpoints_(std::move(b)), densities_(std::move(d)) {}

  std::size_t sector_index(double a) const noexcept;
  void insert_cut(double a);
  void merge_equal_neighbours() noexcept;

  std::vector<double> breakpoints_;  // sorted, in [0, 2*pi)
  std::vector<double> densities_;    // same size, >= 0
};

}  // namespace hdc
