#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hdc {

enum class Method { dc, repetitive_dc };
enum class TreeShape { balanced, chain };
enum class BasisKind { standard, random };

std::string method_name(Method m);

struct ExperimentConfig {
  std::size_t d = 2;
  double rho = 0.0;
  Method method = Method::dc;
  std::optional<long> budget;  // exactly one of budget / (eps, delta)
  std::optional<double> eps;
  std::optional<double> delta;
  TreeShape tree = TreeShape::balanced;
  long trials = 1;
  std::uint64_t seed = 0;
  BasisKind basis = BasisKind::standard;
};

struct RunRecord {
  long trial = 0;
  std::string method;
  std::size_t d = 0;
  double rho = 0.0;
  long budget_or_T = 0;  // planned physical queries; group key for summaries
  std::uint64_t queries_used = 0;
  long repetitions = 1;  // majority votes per logical query; 1 for dc
  double error = 0.0;
  std::uint64_t seed = 0;  // per-trial derived seed
  double wall_ms = 0.0;
};

// One seeded trial per t in [0, trials): derive the trial seed, draw a
// problem, build the oracle, run the method. wall_ms times oracle
// construction plus the learner only. Deterministic apart from wall_ms.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

// Exact schema: header `trial,method,d,rho,budget_or_T,queries_used,
// repetitions_R,error,seed,wall_ms`, LF endings, error at 17 significant
// digits, wall_ms at 3 decimals, rho in shortest round-trip form.
void write_csv(std::ostream& out, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_csv(std::istream& in);

struct SummaryRow {
  std::string method;
  std::size_t d = 0;
  double rho = 0.0;
  long budget_or_T = 0;
  long trials = 0;
  double mean_error = 0.0;
  double median_error = 0.0;
  double p5_error = 0.0;   // empirical 90% interval, lower end
  double p95_error = 0.0;  // upper end
  double mean_wall_ms = 0.0;
};

// Linear interpolation between order statistics at rank q * (n - 1).
double quantile_sorted(const std::vector<double>& sorted_values, double q);

// Groups by (method, d, rho, budget_or_T) in order of first appearance.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace hdc
