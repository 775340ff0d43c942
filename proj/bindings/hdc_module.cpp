#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>
#include <vector>

#include "hdc/circle_posterior.hpp"
#include "hdc/dc.hpp"
#include "hdc/dc2.hpp"
#include "hdc/errors.hpp"
#include "hdc/harness.hpp"
#include "hdc/linalg.hpp"
#include "hdc/oracle.hpp"
#include "hdc/repetitive.hpp"
#include "hdc/rng.hpp"
#include "hdc/schedule.hpp"

namespace py = pybind11;

namespace {

hdc::DcConfig make_config(const hdc::AggregationTree& tree, double rho,
                          std::optional<double> eps, std::optional<double> delta,
                          std::optional<long> budget) {
  hdc::DcConfig c;
  c.rho = rho;
  c.eps = eps;
  c.delta = delta;
  c.budget = budget;
  c.tree = tree;
  return c;
}

hdc::Method method_from_name(const std::string& name) {
  if (name == "dc") return hdc::Method::dc;
  if (name == "repetitive-dc") return hdc::Method::repetitive_dc;
  throw hdc::parameter_error("method must be dc or repetitive-dc, got '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Active halfspace learning from noisy sign queries";
  m.attr("__version__") = "0.1.0";

  py::register_exception<hdc::parameter_error>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<hdc::degenerate_input>(m, "DegenerateInput", PyExc_ArithmeticError);

  py::class_<hdc::UnitVector>(m, "UnitVector")
      .def(py::init([](std::vector<double> v) {
             return hdc::UnitVector::normalized(std::move(v));
           }),
           py::arg("coords"), "Normalize the given coordinates to a unit vector")
      .def_static("axis", &hdc::UnitVector::axis, py::arg("dim"), py::arg("index"))
      .def_property_readonly("dim", &hdc::UnitVector::dim)
      .def("coords", [](const hdc::UnitVector& v) { return v.coords(); })
      .def("__len__", &hdc::UnitVector::dim)
      .def("__getitem__", [](const hdc::UnitVector& v, std::size_t i) {
        if (i >= v.dim()) throw py::index_error();
        return v[i];
      });

  m.def("dot", &hdc::dot);
  m.def("estimation_error", &hdc::estimation_error);
  m.def("combine_unit", &hdc::combine_unit, py::arg("c1"), py::arg("e1"), py::arg("c2"),
        py::arg("e2"));
  m.def("project_normalized", &hdc::project_normalized, py::arg("h"), py::arg("e1"),
        py::arg("e2"));
  m.def("gram_schmidt", &hdc::gram_schmidt, py::arg("vectors"));

  py::class_<hdc::CirclePosterior>(m, "CirclePosterior")
      .def_static("uniform", &hdc::CirclePosterior::uniform)
      .def_static("from_sectors", &hdc::CirclePosterior::from_sectors, py::arg("breakpoints"),
                  py::arg("densities"))
      .def_property_readonly("sector_count", &hdc::CirclePosterior::sector_count)
      .def("breakpoints", [](const hdc::CirclePosterior& p) { return p.breakpoints(); })
      .def("densities", [](const hdc::CirclePosterior& p) { return p.densities(); })
      .def("density_at",
           [](const hdc::CirclePosterior& p, double a) { return p.density_at(hdc::Angle(a)); },
           py::arg("angle"))
      .def("total_mass", &hdc::CirclePosterior::total_mass)
      .def("mass",
           [](const hdc::CirclePosterior& p, double start, double length) {
             return p.mass(hdc::Arc(hdc::Angle(start), length));
           },
           py::arg("start"), py::arg("length"))
      .def("halving_query",
           [](const hdc::CirclePosterior& p) { return p.halving_query().radians(); })
      .def("updated",
           [](const hdc::CirclePosterior& p, double query, int sign, double rho) {
             return p.updated(hdc::Angle(query), sign, rho);
           },
           py::arg("query"), py::arg("sign"), py::arg("rho"))
      .def("map_estimate",
           [](const hdc::CirclePosterior& p) { return p.map_estimate().radians(); });

  py::class_<hdc::RoundSchedule>(m, "RoundSchedule")
      .def_readonly("burn_in", &hdc::RoundSchedule::burn_in)
      .def_readonly("t0", &hdc::RoundSchedule::t0)
      .def_readonly("t1", &hdc::RoundSchedule::t1)
      .def_readonly("t2", &hdc::RoundSchedule::t2)
      .def_readonly("t3", &hdc::RoundSchedule::t3)
      .def_readonly("total", &hdc::RoundSchedule::total);
  m.def("noisy_schedule", &hdc::noisy_schedule, py::arg("eps"), py::arg("delta"),
        py::arg("rho"));
  m.def("compute_rounds", &hdc::compute_rounds, py::arg("eps"), py::arg("delta"),
        py::arg("rho"));
  m.def("compute_repetitions", &hdc::compute_repetitions, py::arg("n0"), py::arg("delta"),
        py::arg("rho"));
  m.def("split_budget", &hdc::split_budget, py::arg("budget"), py::arg("calls"));
  m.def("derive_seed", &hdc::derive_seed, py::arg("seed"), py::arg("index"));

  py::class_<hdc::SignOracle>(m, "SignOracle")
      .def("query", &hdc::SignOracle::query, py::arg("x"))
      .def_property_readonly("queries_used", &hdc::SignOracle::queries_used);
  m.def("truth_oracle", &hdc::make_truth_oracle, py::arg("target"));
  m.def(
      "noisy_oracle",
      [](hdc::UnitVector target, double rho, std::uint64_t seed) {
        return hdc::make_noisy_oracle(hdc::make_truth_oracle(std::move(target)), rho, seed);
      },
      py::arg("target"), py::arg("rho"), py::arg("seed"),
      "Ground-truth oracle for `target` with independent sign flips");
  m.def(
      "majority_oracle",
      [](hdc::UnitVector target, double rho, std::uint64_t seed, long repetitions) {
        return hdc::make_majority_oracle(
            hdc::make_noisy_oracle(hdc::make_truth_oracle(std::move(target)), rho, seed),
            repetitions);
      },
      py::arg("target"), py::arg("rho"), py::arg("seed"), py::arg("repetitions"),
      "Noisy oracle answered by an odd majority vote");

  py::class_<hdc::Dc2Result>(m, "Dc2Result")
      .def_readonly("estimate", &hdc::Dc2Result::estimate)
      .def_readonly("rounds_used", &hdc::Dc2Result::rounds_used)
      .def_readonly("posterior", &hdc::Dc2Result::posterior);
  m.def("dc2", &hdc::dc2, py::arg("e1"), py::arg("e2"), py::arg("rounds"), py::arg("rho"),
        py::arg("oracle"));

  py::class_<hdc::AggregationTree>(m, "AggregationTree")
      .def_static("balanced", &hdc::AggregationTree::balanced, py::arg("leaves"))
      .def_static("chain", &hdc::AggregationTree::chain, py::arg("leaves"))
      .def_property_readonly("leaf_count", &hdc::AggregationTree::leaf_count)
      .def_property_readonly("call_count", &hdc::AggregationTree::call_count);

  m.def(
      "dc",
      [](const std::vector<hdc::UnitVector>& basis, hdc::SignOracle& oracle,
         const hdc::AggregationTree& tree, double rho, std::optional<double> eps,
         std::optional<double> delta, std::optional<long> budget) {
        return hdc::dc(basis, make_config(tree, rho, eps, delta, budget), oracle);
      },
      py::arg("basis"), py::arg("oracle"), py::arg("tree"), py::arg("rho") = 0.0,
      py::arg("eps") = std::nullopt, py::arg("delta") = std::nullopt,
      py::arg("budget") = std::nullopt);

  m.def(
      "repetitive_dc",
      [](const std::vector<hdc::UnitVector>& basis, hdc::SignOracle& oracle,
         const hdc::AggregationTree& tree, double rho, std::optional<double> eps,
         std::optional<double> delta, std::optional<long> budget) {
        hdc::RepetitiveResult r =
            hdc::repetitive_dc(basis, make_config(tree, rho, eps, delta, budget), oracle);
        return py::make_tuple(std::move(r.estimate), r.repetitions, r.logical_rounds);
      },
      py::arg("basis"), py::arg("oracle"), py::arg("tree"), py::arg("rho") = 0.0,
      py::arg("eps") = std::nullopt, py::arg("delta") = std::nullopt,
      py::arg("budget") = std::nullopt,
      "Returns (estimate, repetitions, logical_rounds)");

  m.def(
      "random_problem",
      [](std::size_t dim, std::uint64_t seed, bool random_basis) {
        hdc::Problem p = hdc::random_problem(dim, seed, random_basis);
        return py::make_tuple(std::move(p.target), std::move(p.basis));
      },
      py::arg("dim"), py::arg("seed"), py::arg("random_basis") = false,
      "Returns (target, basis)");

  py::class_<hdc::RunRecord>(m, "RunRecord")
      .def_readonly("trial", &hdc::RunRecord::trial)
      .def_readonly("method", &hdc::RunRecord::method)
      .def_readonly("d", &hdc::RunRecord::d)
      .def_readonly("rho", &hdc::RunRecord::rho)
      .def_readonly("budget_or_T", &hdc::RunRecord::budget_or_T)
      .def_readonly("queries_used", &hdc::RunRecord::queries_used)
      .def_readonly("repetitions", &hdc::RunRecord::repetitions)
      .def_readonly("error", &hdc::RunRecord::error)
      .def_readonly("seed", &hdc::RunRecord::seed)
      .def_readonly("wall_ms", &hdc::RunRecord::wall_ms);

  m.def(
      "run_experiment",
      [](std::size_t d, double rho, const std::string& method, long trials, std::uint64_t seed,
         const std::string& tree, const std::string& basis, std::optional<long> budget,
         std::optional<double> eps, std::optional<double> delta) {
        hdc::ExperimentConfig c;
        c.d = d;
        c.rho = rho;
        c.method = method_from_name(method);
        c.trials = trials;
        c.seed = seed;
        c.tree = tree == "chain" ? hdc::TreeShape::chain : hdc::TreeShape::balanced;
        c.basis = basis == "random" ? hdc::BasisKind::random : hdc::BasisKind::standard;
        c.budget = budget;
        c.eps = eps;
        c.delta = delta;
        return hdc::run_experiment(c);
      },
      py::arg("d"), py::arg("rho"), py::arg("method"), py::arg("trials"), py::arg("seed"),
      py::arg("tree") = "balanced", py::arg("basis") = "standard",
      py::arg("budget") = std::nullopt, py::arg("eps") = std::nullopt,
      py::arg("delta") = std::nullopt);
}
