#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>

#include "mgiss/dag.hpp"

namespace mgiss {

/// Largest node count for the exhaustive sweep (2^(n(n-1)/2) graphs times 2^n sets).
inline constexpr std::size_t kExhaustiveBound = 6;

struct VerifyConfig {
  /// Every labeled DAG on 0..exhaustive_bound nodes, with every node subset.
  std::size_t exhaustive_bound = 5;
  std::size_t random_samples = 1000;
  std::size_t random_max_nodes = 40;
  std::uint64_t seed = 0;
};

using ClosureAlgorithm = std::function<NodeSet(const Dag&, std::span<const NodeId>)>;

struct Counterexample {
  Dag dag;
  NodeSet nodes;
  NodeSet algorithm;
  NodeSet closure;
  NodeSet lambda;

  std::string describe() const;
};

struct VerifyReport {
  std::uint64_t exhaustive_graphs = 0;
  std::uint64_t exhaustive_cases = 0;
  std::uint64_t random_graphs = 0;
  std::uint64_t random_cases = 0;
  std::optional<Counterexample> counterexample;

  bool ok() const { return !counterexample.has_value(); }
};

/// Members reported by c4.
NodeSet c4_members(const Dag& dag, std::span<const NodeId> nodes);

/// Checks algorithm(U) == lsca_closure(U) == lambda_nodes(U), stopping at the
/// first disagreement. Throws kGraphTooLarge when exhaustive_bound exceeds
/// kExhaustiveBound.
VerifyReport verify_closures(const VerifyConfig& config, const ClosureAlgorithm& algorithm = c4_members);

/// Labeled DAG whose edges are the set bits of `mask` over the pairs (i, j),
/// i < j, in row-major order.
Dag dag_from_mask(std::size_t node_count, std::uint64_t mask);

/// Random DAG with 1..max_nodes nodes, expected degree up to `max_degree`, and
/// node ids shuffled so that id order is not a topological order.
Dag random_dag(std::mt19937_64& rng, std::size_t max_nodes, double max_degree = 4.0);

/// Each node independently with probability drawn from [0.05, 0.5].
NodeSet random_subset(std::mt19937_64& rng, std::size_t node_count);

}  // namespace mgiss
