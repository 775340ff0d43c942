#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdc/errors.hpp"
#include "hdc/harness.hpp"

namespace {

using hdc::ExperimentConfig;
using hdc::RunRecord;

hdc::Method parse_method(const std::string& name) {
  if (name == "dc") return hdc::Method::dc;
  if (name == "repetitive-dc") return hdc::Method::repetitive_dc;
  throw hdc::parameter_error("method must be dc or repetitive-dc, got '" + name + "'");
}

hdc::TreeShape parse_tree(const std::string& name) {
  if (name == "balanced") return hdc::TreeShape::balanced;
  if (name == "chain") return hdc::TreeShape::chain;
  throw hdc::parameter_error("tree must be balanced or chain, got '" + name + "'");
}

hdc::BasisKind parse_basis(const std::string& name) {
  if (name == "standard") return hdc::BasisKind::standard;
  if (name == "random") return hdc::BasisKind::random;
  throw hdc::parameter_error("basis must be standard or random, got '" + name + "'");
}

void write_records(const std::string& path, const std::vector<RunRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hdc::parameter_error("cannot open output file '" + path + "'");
  hdc::write_csv(out, records);
  out.flush();
  if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

std::vector<RunRecord> read_records(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hdc::parameter_error("cannot open input file '" + path + "'");
  return hdc::read_csv(in);
}

// Scalar-or-array sweep axis; absent keys fall back to a single default.
template <typename T>
std::vector<T> sweep_axis(const nlohmann::json& spec, const char* key,
                          std::optional<T> fallback) {
  if (!spec.contains(key)) {
    if (fallback) return {*fallback};
    return {};
  }
  const nlohmann::json& j = spec.at(key);
  std::vector<T> values;
  if (j.is_array()) {
    if (j.empty()) throw hdc::parameter_error(std::string("sweep: '") + key + "' is empty");
    for (const auto& v : j) values.push_back(v.template get<T>());
  } else {
    values.push_back(j.template get<T>());
  }
  return values;
}

int do_sweep(const std::string& config_path, const std::string& out_path) {
  std::ifstream in(config_path);
  if (!in) throw hdc::parameter_error("cannot open sweep config '" + config_path + "'");

  nlohmann::json spec;
  try {
    spec = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw hdc::parameter_error(std::string("sweep: invalid JSON: ") + e.what());
  }

  std::vector<RunRecord> all;
  try {
    const auto methods = sweep_axis<std::string>(spec, "method", std::string("dc"));
    const auto dims = sweep_axis<std::size_t>(spec, "d", std::nullopt);
    if (dims.empty()) throw hdc::parameter_error("sweep: missing required key 'd'");
    const auto rhos = sweep_axis<double>(spec, "rho", 0.0);
    const auto budgets = sweep_axis<long>(spec, "budget", std::nullopt);
    const auto epss = sweep_axis<double>(spec, "eps", std::nullopt);
    const auto deltas = sweep_axis<double>(spec, "delta", std::nullopt);
    if (budgets.empty() == (epss.empty() && deltas.empty()))
      throw hdc::parameter_error("sweep: provide either 'budget' or 'eps' and 'delta'");
    if (budgets.empty() && (epss.empty() || deltas.empty()))
      throw hdc::parameter_error("sweep: schedule mode needs both 'eps' and 'delta'");

    ExperimentConfig base;
    base.tree = parse_tree(spec.value("tree", "balanced"));
    base.basis = parse_basis(spec.value("basis", "standard"));
    base.trials = spec.value("trials", 1L);
    base.seed = spec.value("seed", std::uint64_t{0});

    for (const auto& method : methods)
      for (std::size_t d : dims)
        for (double rho : rhos) {
          ExperimentConfig c = base;
          c.method = parse_method(method);
          c.d = d;
          c.rho = rho;
          if (!budgets.empty()) {
            for (long budget : budgets) {
              c.budget = budget;
              const auto records = hdc::run_experiment(c);
              all.insert(all.end(), records.begin(), records.end());
            }
          } else {
            for (double eps : epss)
              for (double delta : deltas) {
                c.eps = eps;
                c.delta = delta;
                const auto records = hdc::run_experiment(c);
                all.insert(all.end(), records.begin(), records.end());
              }
          }
        }
  } catch (const nlohmann::json::exception& e) {
    throw hdc::parameter_error(std::string("sweep: bad config value: ") + e.what());
  }

  write_records(out_path, all);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active halfspace learning from noisy sign queries"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run one experiment configuration");
  ExperimentConfig cfg;
  std::string method = "dc";
  std::string tree = "balanced";
  std::string basis = "standard";
  std::string out_path;
  long budget = 0;
  double eps = 0.0;
  double delta = 0.0;
  run->add_option("--d", cfg.d, "Ambient dimension (>= 2)")->required();
  run->add_option("--rho", cfg.rho, "Independent flip probability in [0, 1/2)");
  run->add_option("--method", method, "dc or repetitive-dc")->required();
  run->add_option("--budget", budget, "Total physical query budget");
  run->add_option("--eps", eps, "Aggregate accuracy target");
  run->add_option("--delta", delta, "Aggregate failure probability");
  run->add_option("--tree", tree, "Aggregation order: balanced or chain");
  run->add_option("--trials", cfg.trials, "Seeded trials to run");
  run->add_option("--seed", cfg.seed, "Base seed (64-bit)");
  run->add_option("--basis", basis, "standard or random orthonormal basis");
  run->add_option("--out", out_path, "Output CSV path")->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a JSON-configured parameter grid");
  std::string sweep_config;
  std::string sweep_out;
  sweep->add_option("--config", sweep_config, "JSON sweep specification")->required();
  sweep->add_option("--out", sweep_out, "Output CSV path")->required();

  // summarize
  auto* summ = app.add_subcommand("summarize", "Aggregate a results CSV per configuration");
  std::string in_path;
  std::string summary_out;
  summ->add_option("--in", in_path, "Results CSV produced by run/sweep")->required();
  summ->add_option("--out", summary_out, "Summary CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      cfg.method = parse_method(method);
      cfg.tree = parse_tree(tree);
      cfg.basis = parse_basis(basis);
      if (run->count("--budget")) cfg.budget = budget;
      if (run->count("--eps")) cfg.eps = eps;
      if (run->count("--delta")) cfg.delta = delta;
      write_records(out_path, hdc::run_experiment(cfg));
      return 0;
    }
    if (*sweep) return do_sweep(sweep_config, sweep_out);
    if (*summ) {
      const auto rows = hdc::summarize(read_records(in_path));
      std::ofstream out(summary_out, std::ios::binary);
      if (!out) throw hdc::parameter_error("cannot open output file '" + summary_out + "'");
      hdc::write_summary_csv(out, rows);
      return 0;
    }
  } catch (const hdc::parameter_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
