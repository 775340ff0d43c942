#include "hdc/dc.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "hdc/errors.hpp"
#include "hdc/rng.hpp"

namespace hdc {

namespace detail {

// Exact pairwise Gram check is O(d^3); past this size dc() falls back to a
// fixed-seed random-probe check (O(d^2)) that still flags any gross
// violation (duplicate, unnormalized or skew vectors) deterministically.
constexpr std::size_t kExactGramLimit = 128;

void check_orthonormal(const std::vector<UnitVector>& basis) {
  const std::size_t d = basis.size();
  const std::size_t n = basis.front().dim();
  for (const UnitVector& e : basis)
    if (e.dim() != n) throw parameter_error("dc: basis vectors must share one dimension");
  if (n < d) throw parameter_error("dc: ambient dimension too small for an orthonormal basis");

  if (d <= kExactGramLimit) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) {
        const double want = i == j ? 1.0 : 0.0;
        if (std::fabs(dot(basis[i], basis[j]) - want) > 1e-9)
          throw parameter_error("dc: basis must be pairwise orthonormal within 1e-9");
      }
    return;
  }

  // Probe: for orthonormal E and r = sum g_i e_i, <e_j, r> recovers g_j.
  for (std::uint64_t probe = 0; probe < 2; ++probe) {
    SplitMix64 rng(derive_seed(0x6772616d70726f62ULL, probe));
    std::vector<double> g(d);
    double g_norm2 = 0.0;
    for (double& v : g) {
      v = rng.next_gaussian();
      g_norm2 += v * v;
    }
    std::vector<double> r(n, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < n; ++k) r[k] += g[i] * basis[i][k];
    double err2 = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += basis[j][k] * r[k];
      err2 += (s - g[j]) * (s - g[j]);
    }
    if (err2 > 1e-14 * g_norm2)
      throw parameter_error("dc: basis must be pairwise orthonormal within 1e-9");
  }
}

}  // namespace detail

AggregationTree AggregationTree::balanced(std::size_t leaves) {
  if (leaves < 2) throw parameter_error("balanced tree needs at least 2 leaves");
  AggregationTree tree;
  tree.leaf_count_ = leaves;
  std::vector<int> layer(leaves);
  for (std::size_t i = 0; i < leaves; ++i) {
    tree.nodes_.push_back(Node{-1, -1, static_cast<int>(i)});
    layer[i] = static_cast<int>(i);
  }
  while (layer.size() > 1) {
    std::vector<int> next;
    next.reserve((layer.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < layer.size(); i += 2) {
      tree.nodes_.push_back(Node{layer[i], layer[i + 1], -1});
      next.push_back(static_cast<int>(tree.nodes_.size()) - 1);
    }
    if (layer.size() % 2 == 1) next.push_back(layer.back());
    layer = std::move(next);
  }
  tree.root_ = layer.front();
  return tree;
}

AggregationTree AggregationTree::chain(std::size_t leaves) {
  if (leaves < 2) throw parameter_error("chain tree needs at least 2 leaves");
  AggregationTree tree;
  tree.leaf_count_ = leaves;
  for (std::size_t i = 0; i < leaves; ++i)
    tree.nodes_.push_back(Node{-1, -1, static_cast<int>(i)});
  int acc = 0;
  for (std::size_t i = 1; i < leaves; ++i) {
    tree.nodes_.push_back(Node{acc, static_cast<int>(i), -1});
    acc = static_cast<int>(tree.nodes_.size()) - 1;
  }
  tree.root_ = acc;
  return tree;
}

AggregationTree AggregationTree::from_nodes(std::vector<Node> nodes, int root) {
  if (nodes.empty() || nodes.size() % 2 == 0)
    throw parameter_error("malformed aggregation tree: wrong node count or root");
  AggregationTree tree;
  tree.nodes_ = std::move(nodes);
  tree.root_ = root;
  tree.leaf_count_ = (tree.nodes_.size() + 1) / 2;
  tree.validate(tree.leaf_count_);
  return tree;
}

void AggregationTree::validate(std::size_t expected_leaves) const {
  if (expected_leaves < 2) throw parameter_error("aggregation tree needs at least 2 leaves");
  if (nodes_.size() != 2 * expected_leaves - 1 || root_ < 0 ||
      root_ >= static_cast<int>(nodes_.size()))
    throw parameter_error("malformed aggregation tree: wrong node count or root");

  std::vector<char> seen_label(expected_leaves, 0);
  std::vector<char> visited(nodes_.size(), 0);
  std::vector<int> stack{root_};
  std::size_t leaves_seen = 0;
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (id < 0 || id >= static_cast<int>(nodes_.size()) || visited[id])
      throw parameter_error("malformed aggregation tree: bad child link");
    visited[id] = 1;
    const Node& nd = nodes_[id];
    if (nd.is_leaf()) {
      if (nd.left != -1 || nd.right != -1)
        throw parameter_error("malformed aggregation tree: leaf with children");
      if (nd.label >= static_cast<int>(expected_leaves) || seen_label[nd.label])
        throw parameter_error("malformed aggregation tree: leaf labels not a permutation");
      seen_label[nd.label] = 1;
      ++leaves_seen;
    } else {
      if (nd.left < 0 || nd.right < 0)
        throw parameter_error("malformed aggregation tree: internal node needs two children");
      stack.push_back(nd.left);
      stack.push_back(nd.right);
    }
  }
  if (leaves_seen != expected_leaves ||
      std::count(visited.begin(), visited.end(), 1) != static_cast<long>(nodes_.size()))
    throw parameter_error("malformed aggregation tree: unreachable nodes");
}

namespace detail {

UnitVector run_aggregation(const std::vector<UnitVector>& basis, const AggregationTree& tree,
                           const std::vector<long>& rounds_per_call, double update_rho,
                           SignOracle& oracle, const DcObserver& observer) {
  const auto& nodes = tree.nodes();
  if (rounds_per_call.size() != tree.call_count())
    throw parameter_error("dc: need one round budget per internal node");

  std::vector<const UnitVector*> value(nodes.size(), nullptr);
  std::vector<UnitVector> computed;
  computed.reserve(tree.call_count());

  // Working set E, tracked only when someone is listening. Entries are
  // (producing node, value); a substitution overwrites the left child's slot
  // and drops the right child's.
  std::vector<std::pair<int, const UnitVector*>> active;

  auto collect_leaves = [&](int id, auto&& self) -> void {
    const auto& nd = nodes[id];
    if (nd.is_leaf()) {
      active.emplace_back(id, &basis[nd.label]);
      return;
    }
    self(nd.left, self);
    self(nd.right, self);
  };
  if (observer) collect_leaves(tree.root(), collect_leaves);

  std::size_t call = 0;
  std::vector<std::pair<int, bool>> stack{{tree.root(), false}};
  while (!stack.empty()) {
    const auto [id, expanded] = stack.back();
    stack.pop_back();
    const auto& nd = nodes[id];
    if (nd.is_leaf()) {
      value[id] = &basis[nd.label];
      continue;
    }
    if (!expanded) {
      stack.emplace_back(id, true);
      stack.emplace_back(nd.right, false);
      stack.emplace_back(nd.left, false);
      continue;
    }
    Dc2Result sub = dc2(*value[nd.left], *value[nd.right], rounds_per_call[call], update_rho,
                        oracle);
    computed.push_back(std::move(sub.estimate));
    value[id] = &computed.back();
    if (observer) {
      auto slot_of = [&](int child) {
        return std::find_if(active.begin(), active.end(),
                            [&](const auto& e) { return e.first == child; });
      };
      auto left_slot = slot_of(nd.left);
      *left_slot = {id, value[id]};
      active.erase(slot_of(nd.right));
      std::vector<UnitVector> snapshot;
      snapshot.reserve(active.size());
      for (const auto& e : active) snapshot.push_back(*e.second);
      observer(call, computed.back(), snapshot);
    }
    ++call;
  }
  return *value[tree.root()];
}

}  // namespace detail

UnitVector dc(const std::vector<UnitVector>& basis, const DcConfig& config, SignOracle& oracle,
              const DcObserver& observer) {
  const std::size_t d = basis.size();
  if (d < 2) throw parameter_error("dc: need at least 2 basis vectors");
  detail::check_orthonormal(basis);
  config.tree.validate(d);
  if (!(config.rho >= 0.0 && config.rho < 0.5))
    throw parameter_error("dc: rho must be in [0, 1/2)");

  const long calls = static_cast<long>(d) - 1;
  const bool schedule_mode = config.eps.has_value() || config.delta.has_value();
  if (schedule_mode == config.budget.has_value())
    throw parameter_error("dc: set either (eps, delta) or budget, not both");

  std::vector<long> rounds_per_call;
  if (schedule_mode) {
    if (!config.eps || !config.delta)
      throw parameter_error("dc: schedule mode needs both eps and delta");
    const double eps_call = *config.eps / (5.0 * static_cast<double>(calls));
    const double delta_call = *config.delta / static_cast<double>(calls);
    if (!(eps_call > 0.0) || eps_call > 5.0 / 18.0)
      throw parameter_error("dc: per-call eps must lie in (0, 5/18]");
    rounds_per_call.assign(static_cast<std::size_t>(calls),
                           compute_rounds(eps_call, delta_call, config.rho));
  } else {
    if (*config.budget < calls)
      throw parameter_error("dc: budget must be at least d - 1");
    rounds_per_call = split_budget(*config.budget, calls);
  }
  return detail::run_aggregation(basis, config.tree, rounds_per_call, config.rho, oracle,
                                 observer);
}

Problem random_problem(std::size_t dim, std::uint64_t seed, bool random_basis) {
  if (dim < 2) throw parameter_error("random_problem: dim must be >= 2");
  SplitMix64 rng(seed);
  std::vector<double> g(dim);
  for (double& v : g) v = rng.next_gaussian();
  UnitVector target = UnitVector::normalized(std::move(g));

  std::vector<UnitVector> basis;
  basis.reserve(dim);
  if (random_basis) {
    std::vector<std::vector<double>> rows(dim, std::vector<double>(dim));
    for (auto& row : rows)
      for (double& v : row) v = rng.next_gaussian();
    basis = gram_schmidt(rows);
  } else {
    for (std::size_t i = 0; i < dim; ++i) basis.push_back(UnitVector::axis(dim, i));
  }
  return Problem{std::move(target), std::move(basis)};
}

}  // namespace hdc
