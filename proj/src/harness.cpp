#include "hdc/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <tuple>
#include <type_traits>

#include "hdc/dc.hpp"
#include "hdc/errors.hpp"
#include "hdc/oracle.hpp"
#include "hdc/repetitive.hpp"
#include "hdc/rng.hpp"
#include "hdc/schedule.hpp"

namespace hdc {

namespace {

constexpr const char* kHeader =
    "trial,method,d,rho,budget_or_T,queries_used,repetitions_R,error,seed,wall_ms";

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, end);
}

std::string fmt_ms(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

AggregationTree build_tree(TreeShape shape, std::size_t d) {
  return shape == TreeShape::balanced ? AggregationTree::balanced(d)
                                      : AggregationTree::chain(d);
}

// Planned physical query total; equals queries_used except for the
// repetitive baseline in budget mode, which may leave a remainder unused.
long planned_queries(const ExperimentConfig& c) {
  if (c.budget) return *c.budget;
  if (!c.eps || !c.delta)
    throw parameter_error("experiment: schedule mode needs both eps and delta");
  const long calls = static_cast<long>(c.d) - 1;
  const double eps_call = *c.eps / (5.0 * static_cast<double>(calls));
  const double delta_call = *c.delta / static_cast<double>(calls);
  if (c.method == Method::dc) return calls * compute_rounds(eps_call, delta_call, c.rho);
  const long n0 = calls * compute_rounds(eps_call, delta_call, 0.0);
  const long reps = c.rho > 0.0 ? compute_repetitions(n0, *c.delta, c.rho) : 1;
  return n0 * reps;
}

}  // namespace

std::string method_name(Method m) { return m == Method::dc ? "dc" : "repetitive-dc"; }

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
  if (config.trials < 1) throw parameter_error("experiment: trials must be >= 1");
  if (config.d < 2) throw parameter_error("experiment: d must be >= 2");
  if (config.budget.has_value() == (config.eps.has_value() || config.delta.has_value()))
    throw parameter_error("experiment: need exactly one of budget or (eps, delta)");

  const long planned = planned_queries(config);
  const AggregationTree tree = build_tree(config.tree, config.d);

  DcConfig run_config;
  run_config.rho = config.rho;
  run_config.eps = config.eps;
  run_config.delta = config.delta;
  run_config.budget = config.budget;
  run_config.tree = tree;

  std::vector<RunRecord> records;
  records.reserve(static_cast<std::size_t>(config.trials));
  for (long t = 0; t < config.trials; ++t) {
    const std::uint64_t seed_t = derive_seed(config.seed, static_cast<std::uint64_t>(t));
    Problem problem = random_problem(config.d, derive_seed(seed_t, 0),
                                     config.basis == BasisKind::random);

    RunRecord rec;
    rec.trial = t;
    rec.method = method_name(config.method);
    rec.d = config.d;
    rec.rho = config.rho;
    rec.budget_or_T = planned;
    rec.seed = seed_t;

    const auto start = std::chrono::steady_clock::now();
    std::unique_ptr<SignOracle> oracle = make_truth_oracle(problem.target);
    if (config.rho > 0.0)
      oracle = make_noisy_oracle(std::move(oracle), config.rho, derive_seed(seed_t, 1));
    UnitVector estimate = [&] {
      if (config.method == Method::dc) return dc(problem.basis, run_config, *oracle);
      RepetitiveResult r = repetitive_dc(problem.basis, run_config, *oracle);
      rec.repetitions = r.repetitions;
      return std::move(r.estimate);
    }();
    const auto stop = std::chrono::steady_clock::now();

    rec.queries_used = oracle->queries_used();
    rec.error = estimation_error(estimate, problem.target);
    rec.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    records.push_back(std::move(rec));
  }
  return records;
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kHeader << "\n";
  for (const RunRecord& r : records) {
    out << r.trial << ',' << r.method << ',' << r.d << ',' << fmt_shortest(r.rho) << ','
        << r.budget_or_T << ',' << r.queries_used << ',' << r.repetitions << ','
        << fmt_g17(r.error) << ',' << r.seed << ',' << fmt_ms(r.wall_ms) << "\n";
  }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
T parse_number(const std::string& field, std::size_t line_no) {
  T value{};
  const char* first = field.data();
  const char* last = field.data() + field.size();
  std::from_chars_result res{};
  if constexpr (std::is_floating_point_v<T>)
    res = std::from_chars(first, last, value);
  else
    res = std::from_chars(first, last, value, 10);
  if (res.ec != std::errc{} || res.ptr != last)
    throw parameter_error("csv: bad numeric field '" + field + "' on line " +
                          std::to_string(line_no));
  return value;
}

}  // namespace

std::vector<RunRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw parameter_error("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw parameter_error("csv: unexpected header '" + line + "'");

  std::vector<RunRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = split_fields(line);
    if (f.size() != 10)
      throw parameter_error("csv: expected 10 fields on line " + std::to_string(line_no));
    RunRecord r;
    r.trial = parse_number<long>(f[0], line_no);
    r.method = f[1];
    r.d = parse_number<std::size_t>(f[2], line_no);
    r.rho = parse_number<double>(f[3], line_no);
    r.budget_or_T = parse_number<long>(f[4], line_no);
    r.queries_used = parse_number<std::uint64_t>(f[5], line_no);
    r.repetitions = parse_number<long>(f[6], line_no);
    r.error = parse_number<double>(f[7], line_no);
    r.seed = parse_number<std::uint64_t>(f[8], line_no);
    r.wall_ms = parse_number<double>(f[9], line_no);
    records.push_back(std::move(r));
  }
  return records;
}

double quantile_sorted(const std::vector<double>& sorted_values, double q) {
  if (sorted_values.empty()) throw parameter_error("quantile of empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw parameter_error("quantile level must be in [0, 1]");
  const double h = q * static_cast<double>(sorted_values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted_values.size()) return sorted_values.back();
  const double frac = h - static_cast<double>(lo);
  return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo]);
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  if (records.empty()) throw parameter_error("summarize: no records");

  using Key = std::tuple<std::string, std::size_t, double, long>;
  std::map<Key, std::size_t> index;
  std::vector<Key> order;
  std::vector<std::vector<const RunRecord*>> groups;
  for (const RunRecord& r : records) {
    const Key key{r.method, r.d, r.rho, r.budget_or_T};
    auto [it, inserted] = index.try_emplace(key, groups.size());
    if (inserted) {
      order.push_back(key);
      groups.emplace_back();
    }
    groups[it->second].push_back(&r);
  }

  std::vector<SummaryRow> rows;
  rows.reserve(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& group = groups[g];
    std::vector<double> errors;
    errors.reserve(group.size());
    double error_sum = 0.0;
    double wall_sum = 0.0;
    for (const RunRecord* r : group) {
      errors.push_back(r->error);
      error_sum += r->error;
      wall_sum += r->wall_ms;
    }
    std::sort(errors.begin(), errors.end());

    SummaryRow row;
    std::tie(row.method, row.d, row.rho, row.budget_or_T) = order[g];
    row.trials = static_cast<long>(group.size());
    row.mean_error = error_sum / static_cast<double>(group.size());
    row.median_error = quantile_sorted(errors, 0.5);
    row.p5_error = quantile_sorted(errors, 0.05);
    row.p95_error = quantile_sorted(errors, 0.95);
    row.mean_wall_ms = wall_sum / static_cast<double>(group.size());
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "method,d,rho,budget_or_T,trials,mean_error,median_error,p5_error,p95_error,"
         "mean_wall_ms\n";
  for (const SummaryRow& r : rows) {
    out << r.method << ',' << r.d << ',' << fmt_shortest(r.rho) << ',' << r.budget_or_T << ','
        << r.trials << ',' << fmt_g17(r.mean_error) << ',' << fmt_g17(r.median_error) << ','
        << fmt_g17(r.p5_error) << ',' << fmt_g17(r.p95_error) << ',' << fmt_ms(r.mean_wall_ms)
        << "\n";
  }
}

}  // namespace hdc
