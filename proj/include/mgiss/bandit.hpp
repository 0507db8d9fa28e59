#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "mgiss/scm.hpp"

namespace mgiss {

struct ArmStats {
  std::uint64_t pulls = 0;
  double mean_reward = 0.0;

  void record(double reward) {
    ++pulls;
    mean_reward += (reward - mean_reward) / static_cast<double>(pulls);
  }
};

struct BanditConfig {
  std::uint64_t horizon = 1000;
  std::uint64_t seed = 0;
  /// Scale of the UCB1 bonus c * sqrt(2 ln t / pulls), used at both levels.
  /// Rewards are not rescaled, so c = 1 assumes rewards of order one.
  double exploration = 1.0;
};

struct BanditRound {
  std::uint64_t round = 0;
  NodeId node = 0;
  /// Mixed-radix code of the context values over An(node) \ {node}
  /// (ascending node id, last node fastest).
  std::uint64_t context_id = 0;
  Value value = 0;
  Value reward = 0;

  bool operator==(const BanditRound&) const = default;
};

struct BanditHistory {
  NodeSet arm_nodes;
  std::vector<BanditRound> rounds;
  /// Node-level statistics at the end of the run, parallel to `arm_nodes`.
  std::vector<ArmStats> final_stats;
  /// Filled by the caller, e.g. from oracle_regret.
  std::vector<double> cumulative_regret;
};

/// Two-level UCB: pick a node by UCB1 over node statistics (each node once
/// first), draw a unit, read the node's context from that unit, pick a value by
/// the UCB1 instance of that context (each value once first), and reward with y
/// under do(node = value) at the same unit. Throws kEmptyArmSet or
/// kHorizonTooSmall.
BanditHistory run_cond_int_ucb(const Scm& scm, NodeId y, std::span<const NodeId> arm_nodes,
                               const BanditConfig& config);

/// optimal_node_value for each arm, in arm order.
std::vector<double> arm_values(const Scm& scm, NodeId y, std::span<const NodeId> arm_nodes,
                               std::uint64_t budget = kDefaultUnitBudget);

/// Cumulative regret of the node choices against the best arm's optimal value.
std::vector<double> oracle_regret(const BanditHistory& history, const Scm& scm, NodeId y,
                                  std::span<const NodeId> arm_nodes, std::uint64_t budget = kDefaultUnitBudget);

/// Same, with precomputed per-arm values (parallel to `arm_nodes`).
std::vector<double> oracle_regret(const BanditHistory& history, std::span<const NodeId> arm_nodes,
                                  std::span<const double> values);

/// The node that most runs ended with the highest node-level mean for
/// (smallest id on ties, both within a run and across the vote).
NodeId estimated_best_arm(std::span<const BanditHistory> histories);

/// Per-node mean reward pooled over every round of every run.
std::map<NodeId, double> pooled_means(std::span<const BanditHistory> histories);

/// Cumulative regret of one run against the estimated best arm, with the
/// pooled empirical means standing in for the unknown arm values.
std::vector<double> estimated_regret(const BanditHistory& history, NodeId best,
                                     const std::map<NodeId, double>& means);

}  // namespace mgiss
