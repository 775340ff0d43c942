#include "hdc/repetitive.hpp"

#include <numeric>

#include "hdc/errors.hpp"
#include "hdc/schedule.hpp"

namespace hdc {

namespace {

constexpr double kBudgetModeDelta = 0.05;

// Non-owning view so the caller's oracle can sit under the owning majority
// wrapper; forwards everything, including the O(1) plane fast path.
class BorrowedOracle final : public SignOracle {
 public:
  explicit BorrowedOracle(SignOracle& inner) : inner_(inner) {}
  int query(const UnitVector& x) override { return inner_.query(x); }
  std::unique_ptr<PlaneSession> open_plane(const UnitVector& e1, const UnitVector& e2) override {
    return inner_.open_plane(e1, e2);
  }
  std::uint64_t queries_used() const noexcept override { return inner_.queries_used(); }

 private:
  SignOracle& inner_;
};

}  // namespace

RepetitiveResult repetitive_dc(const std::vector<UnitVector>& basis,
                               const RepetitiveConfig& config, SignOracle& oracle,
                               const DcObserver& observer) {
  const std::size_t d = basis.size();
  if (d < 2) throw parameter_error("repetitive_dc: need at least 2 basis vectors");
  detail::check_orthonormal(basis);
  config.tree.validate(d);
  if (!(config.rho >= 0.0 && config.rho < 0.5))
    throw parameter_error("repetitive_dc: rho must be in [0, 1/2)");

  const long calls = static_cast<long>(d) - 1;
  const bool schedule_mode = config.eps.has_value() || config.delta.has_value();
  if (schedule_mode == config.budget.has_value())
    throw parameter_error("repetitive_dc: set either (eps, delta) or budget, not both");

  long repetitions = 1;
  std::vector<long> rounds_per_call;
  if (schedule_mode) {
    if (!config.eps || !config.delta)
      throw parameter_error("repetitive_dc: schedule mode needs both eps and delta");
    const double eps_call = *config.eps / (5.0 * static_cast<double>(calls));
    const double delta_call = *config.delta / static_cast<double>(calls);
    if (!(eps_call > 0.0) || eps_call > 5.0 / 18.0)
      throw parameter_error("repetitive_dc: per-call eps must lie in (0, 5/18]");
    const long per_call = compute_rounds(eps_call, delta_call, 0.0);
    rounds_per_call.assign(static_cast<std::size_t>(calls), per_call);
    if (config.rho > 0.0)
      repetitions = compute_repetitions(per_call * calls, *config.delta, config.rho);
  } else {
    const long budget = *config.budget;
    if (budget < calls) throw parameter_error("repetitive_dc: budget must be at least d - 1");
    const long max_odd = (budget / calls) % 2 == 0 ? budget / calls - 1 : budget / calls;
    if (config.rho > 0.0) {
      // One fixed-point step: a pessimistic R from the full budget bounds the
      // logical round count from below, which then prices the real R.
      const long r_up = compute_repetitions(budget, kBudgetModeDelta, config.rho);
      const long n0_guess = std::max(calls, budget / r_up);
      repetitions =
          std::min(compute_repetitions(n0_guess, kBudgetModeDelta, config.rho), max_odd);
    }
    rounds_per_call = split_budget(budget / repetitions, calls);
  }

  auto majority = make_majority_oracle(std::make_unique<BorrowedOracle>(oracle), repetitions);
  UnitVector estimate =
      detail::run_aggregation(basis, config.tree, rounds_per_call, 0.0, *majority, observer);
  const long logical = std::accumulate(rounds_per_call.begin(), rounds_per_call.end(), 0L);
  return RepetitiveResult{std::move(estimate), repetitions, logical};
}

}  // namespace hdc
