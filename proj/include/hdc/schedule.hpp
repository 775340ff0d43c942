#pragma once

#include <vector>

namespace hdc {

// Round budget for one plane-learning call at accuracy eps and failure
// probability delta under flip rate rho (natural logs throughout).
struct RoundSchedule {
  long burn_in;              // initial rounds before the accuracy terms kick in
  double t0, t1, t2, t3;     // competing tail terms; the largest one wins
  long total;                // burn_in + ceil(max{t0..t3}), at least 1
};

// Requires eps > 0, delta in (0, 1), rho in (0, 1/2).
RoundSchedule noisy_schedule(double eps, double delta, double rho);

// Rounds for one plane-learning call. rho = 0 falls back to pure bisection:
// ceil(log2(pi / eps)). Requires eps > 0, delta in (0, 1), rho in [0, 1/2).
long compute_rounds(double eps, double delta, double rho);

// Odd majority-vote repetition count so that n0 logical queries all receive
// the correct answer with probability >= 1 - delta.
long compute_repetitions(long n0, double delta, double rho);

// Near-equal split of `budget` into `calls` parts, larger parts first.
std::vector<long> split_budget(long budget, long calls);

}  // namespace hdc
