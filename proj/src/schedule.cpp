#include "hdc/schedule.hpp"

#include <algorithm>
#include <cmath>

#include "hdc/circle_posterior.hpp"
#include "hdc/errors.hpp"

namespace hdc {

namespace {

void check_eps_delta(double eps, double delta) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw parameter_error("schedule: eps must be positive and finite");
  if (!(delta > 0.0 && delta < 1.0))
    throw parameter_error("schedule: delta must be in (0, 1)");
}

}  // namespace

RoundSchedule noisy_schedule(double eps, double delta, double rho) {
  check_eps_delta(eps, delta);
  if (!(rho > 0.0 && rho < 0.5))
    throw parameter_error("noisy_schedule: rho must be in (0, 1/2)");

  const double m_raw = 2.0 * std::log(2.0 / delta) / -std::log(4.0 * rho * (1.0 - rho));
  const long m = static_cast<long>(std::ceil(m_raw));

  const double gain = std::log(2.0 * (1.0 - rho));
  RoundSchedule s;
  s.burn_in = m;
  s.t0 = 8.0 * std::log(2.0 / delta) / gain;
  s.t1 = 8.0 * std::log(1.0 / (8.0 * kPi * eps)) / gain;
  s.t2 = (8.0 / gain) * (std::log(2.0 * static_cast<double>(m)) + std::log(4.0 / gain));
  s.t3 = (24.0 * rho * std::pow(std::log((1.0 - rho) / rho), 2) / (gain * gain)) *
         (std::log(static_cast<double>(m)) + std::log(4.0 / delta));
  const double tail = std::max({s.t0, s.t1, s.t2, s.t3});
  s.total = std::max(1L, m + static_cast<long>(std::ceil(tail)));
  return s;
}

long compute_rounds(double eps, double delta, double rho) {
  check_eps_delta(eps, delta);
  if (!(rho >= 0.0 && rho < 0.5))
    throw parameter_error("compute_rounds: rho must be in [0, 1/2)");
  if (rho == 0.0) {
    const double t = std::log2(kPi / eps);
    return std::max(1L, static_cast<long>(std::ceil(t)));
  }
  return noisy_schedule(eps, delta, rho).total;
}

long compute_repetitions(long n0, double delta, double rho) {
  if (n0 < 1) throw parameter_error("compute_repetitions: n0 must be >= 1");
  if (!(delta > 0.0 && delta < 1.0))
    throw parameter_error("compute_repetitions: delta must be in (0, 1)");
  if (!(rho >= 0.0 && rho < 0.5))
    throw parameter_error("compute_repetitions: rho must be in [0, 1/2)");

  const double gap = 0.5 - rho;
  const double raw = std::log(static_cast<double>(n0) / delta) / (2.0 * gap * gap);
  long r = std::max(1L, static_cast<long>(std::ceil(raw)));
  if (r % 2 == 0) ++r;
  return r;
}

std::vector<long> split_budget(long budget, long calls) {
  if (calls < 1) throw parameter_error("split_budget: calls must be >= 1");
  if (budget < 0) throw parameter_error("split_budget: budget must be >= 0");
  const long base = budget / calls;
  const long extra = budget % calls;
  std::vector<long> parts(static_cast<std::size_t>(calls), base);
  for (long k = 0; k < extra; ++k) ++parts[static_cast<std::size_t>(k)];
  return parts;
}

}  // namespace hdc
