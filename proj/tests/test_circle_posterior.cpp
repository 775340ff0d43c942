#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hdc/circle_posterior.hpp"
#include "hdc/rng.hpp"
#include "support/grid_bayes.hpp"

using namespace hdc;
using hdc::testsupport::GridBayesFilter;
using hdc::testsupport::grid_halving_theta;

namespace {

// Independent sector lookup used to feed the dense-grid halving oracle.
double sector_pdf(const std::vector<double>& bp, const std::vector<double>& dens, double a) {
  if (a < bp.front()) return dens.back();
  for (std::size_t k = bp.size(); k-- > 0;)
    if (a >= bp[k]) return dens[k];
  return dens.back();
}

CirclePosterior random_posterior(SplitMix64& rng, bool allow_zero) {
  const std::size_t n = 1 + static_cast<std::size_t>(rng.next() % 12);
  std::vector<double> bp;
  while (bp.size() < n) {
    const double a = rng.next_double() * kTwoPi;
    bool dup = false;
    for (double b : bp) dup = dup || b == a;
    if (!dup) bp.push_back(a);
  }
  std::sort(bp.begin(), bp.end());

  std::vector<double> weights(n);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    weights[k] = (allow_zero && rng.next_double() < 0.2) ? 0.0 : rng.next_double();
    total += weights[k];
  }
  if (total == 0.0) weights[0] = total = 1.0;

  std::vector<double> dens(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double len = (k + 1 < n ? bp[k + 1] : bp[0] + kTwoPi) - bp[k];
    dens[k] = weights[k] / total / len;
  }
  // fix residual rounding so the constructor's mass check passes exactly
  double mass = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double len = (k + 1 < n ? bp[k + 1] : bp[0] + kTwoPi) - bp[k];
    mass += dens[k] * len;
  }
  for (double& d : dens) d /= mass;
  return CirclePosterior::from_sectors(bp, dens);
}

}  // namespace

TEST_SUITE_BEGIN("circle_posterior");

TEST_CASE("angle canonicalization") {
  CHECK(Angle(0.0).radians() == 0.0);
  CHECK(Angle(kTwoPi).radians() == 0.0);
  CHECK(Angle(-kPi / 2).radians() == doctest::Approx(1.5 * kPi).epsilon(1e-15));
  CHECK(Angle(7.0 * kPi).radians() == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(Angle().radians() == 0.0);

  SplitMix64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double r = (rng.next_double() - 0.5) * 2e6;
    const double c = Angle::canonical(r);
    CHECK(c >= 0.0);
    CHECK(c < kTwoPi);
  }
}

TEST_CASE("uniform posterior") {
  const auto p = CirclePosterior::uniform();
  CHECK(p.sector_count() == 1);
  CHECK(p.breakpoints()[0] == 0.0);
  CHECK(p.densities()[0] == 1.0 / kTwoPi);
  CHECK(p.total_mass() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p.density_at(Angle(2.5)) == 1.0 / kTwoPi);
  CHECK(p.map_estimate().radians() == kPi);
}

TEST_CASE("mass of arcs") {
  const auto u = CirclePosterior::uniform();
  CHECK(u.mass(Arc(Angle(0.0), 1.5 * kPi)) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(u.mass(Arc(Angle(1.5 * kPi), kPi)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(u.mass(Arc(Angle(0.3), kTwoPi)) == doctest::Approx(1.0).epsilon(1e-14));

  const auto p = CirclePosterior::from_sectors({0.0, kPi}, {3.0 / (4.0 * kPi), 1.0 / (4.0 * kPi)});
  CHECK(p.mass(Arc(Angle(0.0), kPi)) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(p.mass(Arc(Angle(1.5 * kPi), kPi)) == doctest::Approx(0.5).epsilon(1e-14));

  CHECK_THROWS_AS(Arc(Angle(1.0), 0.0), degenerate_input);
  CHECK_THROWS_AS(Arc(Angle(1.0), -0.5), degenerate_input);
  CHECK_THROWS_AS(Arc(Angle(1.0), kTwoPi + 0.1), parameter_error);
  CHECK_THROWS_AS(Arc(Angle(1.0), std::nan("")), parameter_error);
}

TEST_CASE("from_sectors validation and eager merging") {
  CHECK_THROWS_AS(CirclePosterior::from_sectors({1.0, 0.5}, {0.2, 0.2}), parameter_error);
  CHECK_THROWS_AS(CirclePosterior::from_sectors({0.0, 0.0}, {0.2, 0.2}), parameter_error);
  CHECK_THROWS_AS(CirclePosterior::from_sectors({0.0, kPi}, {-0.1, 0.4}), parameter_error);
  CHECK_THROWS_AS(CirclePosterior::from_sectors({0.0, 7.0}, {0.1, 0.1}), parameter_error);
  CHECK_THROWS_AS(CirclePosterior::from_sectors({0.0}, {0.5}), parameter_error);  // mass != 1
  CHECK_THROWS_AS(CirclePosterior::from_sectors({0.0, 1.0}, {0.2}), parameter_error);
  CHECK_THROWS_AS(CirclePosterior::from_sectors({}, {}), parameter_error);

  const auto merged =
      CirclePosterior::from_sectors({0.0, kPi}, {1.0 / kTwoPi, 1.0 / kTwoPi});
  CHECK(merged.sector_count() == 1);
}

TEST_CASE("halving query tie-breaks and hand-solved cases") {
  // Uniform: every theta halves; the smallest is 0, so x = pi/2.
  CHECK(CirclePosterior::uniform().halving_query().radians() == kPi / 2);

  // Two sectors 3/(4pi) on [0, pi), 1/(4pi) on [pi, 2pi): theta* solves
  // 3/4 - theta/(2pi) = 1/2, i.e. theta* = pi/2, so x = pi.
  const auto p = CirclePosterior::from_sectors({0.0, kPi}, {3.0 / (4.0 * kPi), 1.0 / (4.0 * kPi)});
  CHECK(p.halving_query().radians() == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("halving query agrees with the dense grid oracle") {
  struct Case {
    std::vector<double> bp;
    std::vector<double> weights;  // sector masses, must sum to 1
  };
  const std::vector<Case> cases = {
      // five sectors, one of them empty
      {{0.3, 1.1, 2.0, 4.0, 5.5}, {0.3, 0.0, 0.25, 0.15, 0.3}},
      // bulk inside a narrow sector, support straddling the wrap seam
      {{5.0, 6.0}, {0.7, 0.3}},
  };
  for (const auto& c : cases) {
    std::vector<double> dens(c.bp.size());
    double mass = 0.0;
    for (std::size_t k = 0; k < c.bp.size(); ++k) {
      const double len = (k + 1 < c.bp.size() ? c.bp[k + 1] : c.bp[0] + kTwoPi) - c.bp[k];
      dens[k] = c.weights[k] / len;
      mass += dens[k] * len;
    }
    for (double& d : dens) d /= mass;
    const auto p = CirclePosterior::from_sectors(c.bp, dens);

    // The grid oracle's own bias is ~cell width / 2 (cells straddling a
    // breakpoint use the midpoint density), so it needs 10^7 cells for 1e-6.
    const double theta_impl = Angle::canonical(p.halving_query().radians() - kPi / 2);
    const double theta_grid =
        grid_halving_theta([&](double a) { return sector_pdf(c.bp, dens, a); }, 10000000);
    CHECK(std::fabs(theta_impl - theta_grid) <= 1e-6);
  }
}

TEST_CASE("halving invariant holds on random posteriors") {
  SplitMix64 rng(401);
  for (int rep = 0; rep < 200; ++rep) {
    const auto p = random_posterior(rng, rep % 2 == 0);
    const Angle x = p.halving_query();
    const double half = p.mass(Arc(Angle(x.radians() - kPi / 2), kPi));
    CHECK(std::fabs(half - 0.5) <= 1e-9);
  }
}

TEST_CASE("bayes update applies the two-point likelihood") {
  const auto u = CirclePosterior::uniform();

  SUBCASE("agreeing half gets 2(1-rho), the other 2rho") {
    const auto p = u.updated(Angle(kPi / 2), +1, 0.1);
    CHECK(p.sector_count() == 2);
    CHECK(p.breakpoints()[0] == 0.0);
    CHECK(p.breakpoints()[1] == kPi);
    CHECK(p.density_at(Angle(0.25 * kPi)) == doctest::Approx(1.8 / kTwoPi).epsilon(1e-14));
    CHECK(p.density_at(Angle(4.0)) == doctest::Approx(0.2 / kTwoPi).epsilon(1e-14));
    CHECK(p.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("observed sign -1 flips the halves") {
    const auto p = u.updated(Angle(kPi / 2), -1, 0.1);
    CHECK(p.density_at(Angle(1.0)) == doctest::Approx(0.2 / kTwoPi).epsilon(1e-14));
    CHECK(p.density_at(Angle(4.0)) == doctest::Approx(1.8 / kTwoPi).epsilon(1e-14));
  }

  SUBCASE("rho = 0 zeroes the disagreeing half exactly") {
    const auto p = u.updated(Angle(kPi / 2), +1, 0.0);
    CHECK(p.density_at(Angle(4.0)) == 0.0);
    CHECK(p.mass(Arc(Angle(0.0), kPi)) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("invalid arguments") {
    CHECK_THROWS_AS(u.updated(Angle(1.0), 0, 0.1), parameter_error);
    CHECK_THROWS_AS(u.updated(Angle(1.0), 2, 0.1), parameter_error);
    CHECK_THROWS_AS(u.updated(Angle(1.0), 1, 0.5), parameter_error);
    CHECK_THROWS_AS(u.updated(Angle(1.0), 1, -0.1), parameter_error);
    CHECK_THROWS_AS(u.updated(Angle(1.0), 1, std::nan("")), parameter_error);
  }
}

TEST_CASE("ten updates match the brute-force grid filter") {
  auto p = CirclePosterior::uniform();
  GridBayesFilter filter(10000);
  SplitMix64 rng(123);
  const double rho = 0.1;
  for (int m = 0; m < 10; ++m) {
    const Angle x = p.halving_query();
    const int s = rng.next_double() < 0.5 ? 1 : -1;
    p = p.updated(x, s, rho);
    filter.update(x.radians(), s, rho);
  }
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double a = kTwoPi * (i + 0.5) / 10000.0;
    worst = std::max(worst, std::fabs(p.density_at(Angle(a)) - filter.value_at(a)));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("update keeps normalization, sector bound and the ratio law") {
  auto p = CirclePosterior::uniform();
  SplitMix64 rng(55);
  const double rho = 0.25;
  std::vector<double> probe(64);
  for (int i = 0; i < 64; ++i) probe[i] = kTwoPi * (i + 0.37) / 64.0;

  for (int m = 1; m <= 200; ++m) {
    std::vector<double> before(64);
    for (int i = 0; i < 64; ++i) before[i] = p.density_at(Angle(probe[i]));

    const Angle x = p.halving_query();
    const int s = rng.next_double() < 0.5 ? 1 : -1;

    // The update multiplies by the two-point likelihood and renormalizes by
    // z = 2(1-rho) m_agree + 2 rho (1 - m_agree); the halving query keeps z
    // within ~1e-9 of 1 but not exactly there.
    const double m_plus = p.mass(Arc(Angle(x.radians() - kPi / 2), kPi));
    const double m_agree = s == 1 ? m_plus : 1.0 - m_plus;
    const double z = 2.0 * (1.0 - rho) * m_agree + 2.0 * rho * (1.0 - m_agree);

    p = p.updated(x, s, rho);

    CHECK(std::fabs(p.total_mass() - 1.0) <= 1e-9);
    CHECK(p.sector_count() <= 2 * static_cast<std::size_t>(m) + 1);

    for (int i = 0; i < 64; ++i) {
      if (before[i] == 0.0) continue;
      const double ratio = p.density_at(Angle(probe[i])) / before[i];
      const double err = std::min(std::fabs(ratio - 2.0 * rho / z),
                                  std::fabs(ratio - 2.0 * (1.0 - rho) / z));
      CHECK(err <= 1e-9);
    }
  }
}

TEST_CASE("map estimate picks the first maximal sector") {
  // Two tied maximal sectors at indices 1 and 3; the first wins.
  const double y = 0.2;
  const double rest = 1.0 - y * 1.0 - y * (kTwoPi - 3.0);
  const double x = rest / 2.0;
  const auto p = CirclePosterior::from_sectors({0.0, 1.0, 2.0, 3.0}, {x, y, x, y});
  CHECK(p.map_estimate().radians() == doctest::Approx(1.5).epsilon(1e-15));

  const auto q = CirclePosterior::uniform().updated(Angle(kPi / 2), +1, 0.1);
  CHECK(q.map_estimate().radians() == doctest::Approx(kPi / 2).epsilon(1e-15));
}

TEST_CASE("noiseless bisection halves the support width each round") {
  const double target = 1.0;
  auto p = CirclePosterior::uniform();
  for (int m = 1; m <= 20; ++m) {
    const Angle x = p.halving_query();
    // truthful oracle for the direction at angle `target`; sign(0) is -1
    const int s = std::cos(x.radians() - target) > 0.0 ? 1 : -1;
    p = p.updated(x, s, 0.0);

    std::size_t support_sectors = 0;
    double width = 0.0;
    bool contains = false;
    for (std::size_t k = 0; k < p.sector_count(); ++k) {
      if (p.densities()[k] <= 0.0) continue;
      ++support_sectors;
      width += p.sector_length(k);
      const double lo = p.breakpoints()[k];
      const double span = p.sector_length(k);
      const double rel = Angle::canonical(target - lo);
      contains = contains || rel < span;
    }
    CHECK(support_sectors == 1);
    // one sign query halves the admissible region: 2pi -> pi -> pi/2 -> ...
    CHECK(width == doctest::Approx(kPi / std::pow(2.0, m - 1)).epsilon(1e-9));
    CHECK(contains);
    CHECK(p.sector_count() == 2);

    // midpoint estimate sits within half the support width of the target
    const double gap = Angle::canonical(p.map_estimate().radians() - target);
    const double arc = std::min(gap, kTwoPi - gap);
    CHECK(arc <= kPi / std::pow(2.0, m) + 1e-12);
  }
}

TEST_CASE("updates are deterministic bit for bit") {
  auto run = [] {
    auto p = CirclePosterior::uniform();
    SplitMix64 rng(77);
    for (int m = 0; m < 30; ++m) {
      const Angle x = p.halving_query();
      const int s = rng.next_double() < 0.5 ? 1 : -1;
      p = p.updated(x, s, 0.15);
    }
    return p;
  };
  const auto a = run();
  const auto b = run();
  REQUIRE(a.sector_count() == b.sector_count());
  CHECK(std::equal(a.breakpoints().begin(), a.breakpoints().end(), b.breakpoints().begin()));
  CHECK(std::equal(a.densities().begin(), a.densities().end(), b.densities().begin()));
}

TEST_SUITE_END();
