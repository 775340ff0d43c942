#include "hdc/circle_posterior.hpp"

#include <algorithm>
#include <cmath>

namespace hdc {

double Angle::canonical(double radians) noexcept {
  double x = std::fmod(radians, kTwoPi);
  if (x < 0.0) x += kTwoPi;
  if (x >= kTwoPi) x = 0.0;  // the addition above can land exactly on 2*pi
  return x;
}

Arc::Arc(Angle start_, double length_) : start(start_), length(length_) {
  if (std::isnan(length_)) throw parameter_error("Arc: length is NaN");
  if (length_ <= 0.0) throw degenerate_input("Arc: zero or negative length");
  if (length_ > kTwoPi) throw parameter_error("Arc: length exceeds the full circle");
}

CirclePosterior CirclePosterior::uniform() {
  return CirclePosterior({0.0}, {1.0 / kTwoPi});
}

CirclePosterior CirclePosterior::from_sectors(std::vector<double> breakpoints,
                                              std::vector<double> densities) {
  if (breakpoints.empty() || breakpoints.size() != densities.size())
    throw parameter_error("CirclePosterior: need matching non-empty breakpoints and densities");
  for (std::size_t k = 0; k < breakpoints.size(); ++k) {
    const double b = breakpoints[k];
    if (!std::isfinite(b) || b < 0.0 || b >= kTwoPi)
      throw parameter_error("CirclePosterior: breakpoints must lie in [0, 2*pi)");
    if (k > 0 && !(breakpoints[k - 1] < b))
      throw parameter_error("CirclePosterior: breakpoints must be strictly increasing");
    if (!std::isfinite(densities[k]) || densities[k] < 0.0)
      throw parameter_error("CirclePosterior: densities must be finite and >= 0");
  }
  CirclePosterior p(std::move(breakpoints), std::move(densities));
  if (std::fabs(p.total_mass() - 1.0) > 1e-9)
    throw parameter_error("CirclePosterior: total mass must be 1 within 1e-9");
  p.merge_equal_neighbours();
  return p;
}

double CirclePosterior::sector_length(std::size_t k) const noexcept {
  const double hi =
      (k + 1 < breakpoints_.size()) ? breakpoints_[k + 1] : breakpoints_.front() + kTwoPi;
  return hi - breakpoints_[k];
}

std::size_t CirclePosterior::sector_index(double a) const noexcept {
  if (a < breakpoints_.front()) return breakpoints_.size() - 1;  // wrapped part of last sector
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), a);
  return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
}

double CirclePosterior::density_at(Angle a) const noexcept {
  return densities_[sector_index(a.radians())];
}

double CirclePosterior::total_mass() const noexcept {
  long double m = 0.0L;
  for (std::size_t k = 0; k < breakpoints_.size(); ++k)
    m += static_cast<long double>(densities_[k]) * sector_length(k);
  return static_cast<double>(m);
}

namespace {

// Integral of the density over [0, x) for 0 <= x <= 2*pi.
double prefix_mass(const std::vector<double>& bp, const std::vector<double>& dens, double x) {
  long double acc = 0.0L;
  // the slice [0, bp[0]) belongs to the wrapping last sector
  acc += static_cast<long double>(dens.back()) * std::min(x, bp.front());
  for (std::size_t k = 0; k < bp.size(); ++k) {
    const double lo = bp[k];
    if (x <= lo) break;
    const double hi = (k + 1 < bp.size()) ? bp[k + 1] : kTwoPi;
    acc += static_cast<long double>(dens[k]) * (std::min(x, hi) - lo);
  }
  return static_cast<double>(acc);
}

}  // namespace

double CirclePosterior::mass(const Arc& arc) const noexcept {
  const double a = arc.start.radians();
  const double b = a + arc.length;
  if (b <= kTwoPi) return prefix_mass(breakpoints_, densities_, b) - prefix_mass(breakpoints_, densities_, a);
  return (prefix_mass(breakpoints_, densities_, kTwoPi) - prefix_mass(breakpoints_, densities_, a)) +
         prefix_mass(breakpoints_, densities_, b - kTwoPi);
}

Angle CirclePosterior::halving_query() const {
  // g(theta) = mass([theta, theta + pi)) - 1/2 is continuous and piecewise
  // linear with kinks only where theta or theta + pi crosses a breakpoint.
  // Since g(theta + pi) = -g(theta), a zero lies in [0, pi]; sweep the kink
  // angles in that range and interpolate inside the bracketing interval.
  const std::size_t n = breakpoints_.size();

  std::vector<double> low, high;  // kink angles from breakpoints and antipodes
  low.reserve(n + 2);
  high.reserve(n + 2);
  for (double b : breakpoints_) {
    if (b <= kPi) low.push_back(b);       // theta itself crosses b
    if (b >= kPi) high.push_back(b - kPi);  // theta + pi crosses b
  }
  std::vector<double> crit;
  crit.reserve(low.size() + high.size() + 2);
  crit.push_back(0.0);
  std::merge(high.begin(), high.end(), low.begin(), low.end(), std::back_inserter(crit));
  crit.push_back(kPi);
  crit.erase(std::unique(crit.begin(), crit.end()), crit.end());

  double g = mass(Arc(Angle(0.0), kPi)) - 0.5;
  double best_g = std::fabs(g), best_theta = 0.0;

  for (std::size_t j = 0; j + 1 < crit.size(); ++j) {
    if (std::fabs(g) <= 1e-12) return Angle(crit[j] + kPi / 2);

    // On the open interval (crit[j], crit[j+1]) both window ends stay inside
    // one sector, and the half-open sector convention makes the lookup at
    // the interval's left endpoint exact. Sampling an interval midpoint
    // instead would round onto an endpoint once sectors shrink to a few
    // ulps (heavily concentrated posteriors) and miss the steep crossing.
    // The far end reconstructs breakpoints exactly: b - pi is exact for
    // b in [pi, 2*pi) (Sterbenz), so (b - pi) + pi == b; the sum can still
    // round up to 2*pi when crit[j] sits just under pi, hence the wrap.
    double far = crit[j] + kPi;
    if (far >= kTwoPi) far -= kTwoPi;
    const double slope = densities_[sector_index(far)] - densities_[sector_index(crit[j])];
    const double g_next = g + slope * (crit[j + 1] - crit[j]);

    if ((g > 0.0) != (g_next > 0.0)) {
      const double theta = crit[j] + (crit[j + 1] - crit[j]) * g / (g - g_next);
      return Angle(theta + kPi / 2);
    }
    if (std::fabs(g_next) < best_g) {
      best_g = std::fabs(g_next);
      best_theta = crit[j + 1];
    }
    g = g_next;
  }
  if (best_g <= 1e-9) return Angle(best_theta + kPi / 2);
  throw degenerate_input("halving_query: no halving direction found");
}

CirclePosterior CirclePosterior::updated(Angle query, int sign, double rho) const {
  if (sign != 1 && sign != -1) throw parameter_error("updated: sign must be +1 or -1");
  if (!(rho >= 0.0 && rho < 0.5)) throw parameter_error("updated: rho must be in [0, 1/2)");

  CirclePosterior p(*this);
  const double q = query.radians();
  const double cut_lo = Angle::canonical(q - kPi / 2);
  const double cut_hi = Angle::canonical(q + kPi / 2);
  p.insert_cut(cut_lo);
  p.insert_cut(cut_hi);

  // {h : sign<x(q), x(h)> = +1} is the half-open arc [q - pi/2, q + pi/2)
  auto in_plus_half = [&](double a) {
    return cut_lo <= cut_hi ? (a >= cut_lo && a < cut_hi) : (a >= cut_lo || a < cut_hi);
  };
  const double agree = 2.0 * (1.0 - rho);
  const double disagree = 2.0 * rho;
  for (std::size_t k = 0; k < p.breakpoints_.size(); ++k) {
    const double mid = Angle::canonical(p.breakpoints_[k] + 0.5 * p.sector_length(k));
    const int s = in_plus_half(mid) ? 1 : -1;
    p.densities_[k] *= (s == sign) ? agree : disagree;
  }

  // A halving query makes the exact mass 1; division only absorbs drift.
  long double mass = 0.0L;
  for (std::size_t k = 0; k < p.breakpoints_.size(); ++k)
    mass += static_cast<long double>(p.densities_[k]) * p.sector_length(k);
  if (!(mass > 0.0L)) throw degenerate_input("updated: posterior mass vanished");
  for (double& d : p.densities_) d = static_cast<double>(static_cast<long double>(d) / mass);

  p.merge_equal_neighbours();
  return p;
}

Angle CirclePosterior::map_estimate() const noexcept {
  std::size_t best = 0;
  for (std::size_t k = 1; k < densities_.size(); ++k)
    if (densities_[k] > densities_[best]) best = k;
  return Angle(breakpoints_[best] + 0.5 * sector_length(best));
}

void CirclePosterior::insert_cut(double a) {
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), a);
  if (it != breakpoints_.end() && *it == a) return;
  const std::size_t pos = static_cast<std::size_t>(it - breakpoints_.begin());
  const std::size_t owner = (pos == 0) ? breakpoints_.size() - 1 : pos - 1;
  const double d = densities_[owner];
  breakpoints_.insert(it, a);
  densities_.insert(densities_.begin() + static_cast<std::ptrdiff_t>(pos), d);
}

void CirclePosterior::merge_equal_neighbours() noexcept {
  const auto equal = [](double x, double y) {
    return std::fabs(x - y) <= 1e-12 * std::max(std::fabs(x), std::fabs(y));
  };

  std::vector<double> bp, dens;
  bp.reserve(breakpoints_.size());
  dens.reserve(densities_.size());
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    if (!dens.empty() && equal(dens.back(), densities_[k])) continue;
    bp.push_back(breakpoints_[k]);
    dens.push_back(densities_[k]);
  }
  // wrap seam: if the first and last sectors match, the first breakpoint goes
  while (dens.size() > 1 && equal(dens.back(), dens.front())) {
    bp.erase(bp.begin());
    dens.erase(dens.begin());
  }
  breakpoints_ = std::move(bp);
  densities_ = std::move(dens);
}

}  // namespace hdc
