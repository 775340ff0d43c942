#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hdc/dc2.hpp"
#include "hdc/schedule.hpp"

namespace hdc {

// Full binary aggregation tree over d leaves; leaf labels are a permutation
// of 0..d-1 selecting basis vectors, internal nodes are plane-learning calls.
class AggregationTree {
 public:
  struct Node {
    int left = -1;
    int right = -1;
    int label = -1;  // >= 0 iff leaf
    bool is_leaf() const noexcept { return label >= 0; }
  };

  AggregationTree() = default;

  // Tournament pairing: leaves in index order, adjacent nodes paired level by
  // level, an odd node passes through to the next level.
  static AggregationTree balanced(std::size_t leaves);

  // Left-deep chain: ((((0,1),2),3), ...).
  static AggregationTree chain(std::size_t leaves);

  // Adopts an explicit node list (leaf count inferred from the node count)
  // after validating it describes a full binary tree.
  static AggregationTree from_nodes(std::vector<Node> nodes, int root);

  std::size_t leaf_count() const noexcept { return leaf_count_; }
  std::size_t call_count() const noexcept { return leaf_count_ ? leaf_count_ - 1 : 0; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  int root() const noexcept { return root_; }

  // Full binary shape, d leaves, labels a permutation of 0..d-1.
  void validate(std::size_t expected_leaves) const;

 private:
  std::vector<Node> nodes_;
  int root_ = -1;
  std::size_t leaf_count_ = 0;
};

struct DcConfig {
  double rho = 0.0;
  // exactly one mode: accuracy (eps and delta) or an exact query budget
  std::optional<double> eps;    // aggregate accuracy target
  std::optional<double> delta;  // aggregate failure probability
  std::optional<long> budget;   // exact total number of physical queries
  AggregationTree tree;
};

// Called after each internal-node substitution with the 0-based call index,
// the node's estimate and the current working set of active directions.
using DcObserver =
    std::function<void(std::size_t, const UnitVector&, const std::vector<UnitVector>&)>;

// Dimension coupling: learns the hidden direction by d-1 plane-learning
// calls arranged along config.tree, visiting internal nodes in post-order.
UnitVector dc(const std::vector<UnitVector>& basis, const DcConfig& config, SignOracle& oracle,
              const DcObserver& observer = {});

struct Problem {
  UnitVector target;
  std::vector<UnitVector> basis;
};

// Gaussian random unit target plus a query basis (standard, or a random
// orthonormal frame when random_basis is set).
Problem random_problem(std::size_t dim, std::uint64_t seed, bool random_basis);

namespace detail {

// Shared traversal: runs one dc2 call per internal node in post-order with
// the given per-call round budgets and update-time flip rate.
UnitVector run_aggregation(const std::vector<UnitVector>& basis, const AggregationTree& tree,
                           const std::vector<long>& rounds_per_call, double update_rho,
                           SignOracle& oracle, const DcObserver& observer);

// Pairwise orthonormality within 1e-9. Exact Gram check up to 128 vectors;
// beyond that a fixed-seed random-probe check (O(d^2)) that still flags any
// gross violation deterministically.
void check_orthonormal(const std::vector<UnitVector>& basis);

}  // namespace detail

}  // namespace hdc
