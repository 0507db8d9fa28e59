#include "mgiss/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mgiss/error.hpp"

namespace mgiss {

namespace {

// Index of the arm to pull: the first unpulled arm, else the UCB1 maximizer.
// `t` is the 1-based round of this bandit instance.
std::size_t ucb1_choice(std::span<const ArmStats> arms, std::uint64_t t, double exploration) {
  for (std::size_t i = 0; i < arms.size(); ++i) {
    if (arms[i].pulls == 0) return i;
  }
  const double log_t = std::log(static_cast<double>(t));
  std::size_t best = 0;
  double best_index = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < arms.size(); ++i) {
    double index = arms[i].mean_reward +
                   exploration * std::sqrt(2.0 * log_t / static_cast<double>(arms[i].pulls));
    if (index > best_index) {
      best_index = index;
      best = i;
    }
  }
  return best;
}

struct ContextBandit {
  std::vector<ArmStats> values;
  std::uint64_t pulls = 0;
};

struct NodeState {
  NodeSet context_nodes;
  std::map<std::vector<Value>, ContextBandit> contexts;
};

}  // namespace

BanditHistory run_cond_int_ucb(const Scm& scm, NodeId y, std::span<const NodeId> arm_nodes,
                               const BanditConfig& config) {
  NodeSet arms = make_set({arm_nodes.begin(), arm_nodes.end()});
  if (arms.empty()) throw Error(ErrorCode::kEmptyArmSet, "no arm nodes");
  if (y >= scm.node_count()) throw Error(ErrorCode::kNodeOutOfRange, "node " + std::to_string(y));
  for (NodeId a : arms) {
    if (a >= scm.node_count() || a == y) {
      throw Error(ErrorCode::kNodeOutOfRange, "arm " + std::to_string(a) + " is not a non-target node");
    }
  }
  if (config.horizon < arms.size()) {
    throw Error(ErrorCode::kHorizonTooSmall, "horizon " + std::to_string(config.horizon) + " below " +
                                                 std::to_string(arms.size()) + " arms");
  }

  std::vector<NodeState> states(arms.size());
  for (std::size_t i = 0; i < arms.size(); ++i) states[i].context_nodes = default_conditioning_set(scm.dag(), arms[i]);

  BanditHistory history;
  history.arm_nodes = arms;
  history.final_stats.assign(arms.size(), ArmStats{});
  history.rounds.reserve(config.horizon);
  std::mt19937_64 rng(config.seed);
  std::vector<Value> key;

  for (std::uint64_t t = 1; t <= config.horizon; ++t) {
    const std::size_t arm = ucb1_choice(history.final_stats, t, config.exploration);
    const NodeId node = arms[arm];
    NodeState& state = states[arm];

    const Unit unit = sample_unit(scm, rng);
    const auto observed = scm.evaluate(unit).values;
    key.resize(state.context_nodes.size());
    std::uint64_t context_id = 0;
    for (std::size_t i = 0; i < key.size(); ++i) {
      key[i] = observed[state.context_nodes[i]];
      context_id = context_id * static_cast<std::uint64_t>(scm.range_size(state.context_nodes[i])) +
                   static_cast<std::uint64_t>(key[i]);
    }
    auto [it, inserted] = state.contexts.try_emplace(key);
    ContextBandit& bandit = it->second;
    if (inserted) bandit.values.assign(static_cast<std::size_t>(scm.range_size(node)), ArmStats{});

    const auto value = static_cast<Value>(ucb1_choice(bandit.values, bandit.pulls + 1, config.exploration));
    const Value reward = scm.evaluate_forced(unit, node, value).values[y];

    bandit.values[static_cast<std::size_t>(value)].record(reward);
    ++bandit.pulls;
    history.final_stats[arm].record(reward);
    history.rounds.push_back(BanditRound{t, node, context_id, value, reward});
  }
  return history;
}

std::vector<double> arm_values(const Scm& scm, NodeId y, std::span<const NodeId> arm_nodes, std::uint64_t budget) {
  std::vector<double> values;
  values.reserve(arm_nodes.size());
  for (NodeId a : arm_nodes) values.push_back(optimal_node_value(scm, y, a, budget));
  return values;
}

std::vector<double> oracle_regret(const BanditHistory& history, std::span<const NodeId> arm_nodes,
                                  std::span<const double> values) {
  if (arm_nodes.size() != values.size() || values.empty()) {
    throw Error(ErrorCode::kEmptyArmSet, "arm values must match the arm nodes");
  }
  const double best = *std::max_element(values.begin(), values.end());
  std::vector<double> regret;
  regret.reserve(history.rounds.size());
  double total = 0.0;
  for (const auto& round : history.rounds) {
    auto it = std::find(arm_nodes.begin(), arm_nodes.end(), round.node);
    if (it == arm_nodes.end()) throw Error(ErrorCode::kNodeOutOfRange, "pulled node is not an arm");
    total += best - values[static_cast<std::size_t>(it - arm_nodes.begin())];
    regret.push_back(total);
  }
  return regret;
}

std::vector<double> oracle_regret(const BanditHistory& history, const Scm& scm, NodeId y,
                                  std::span<const NodeId> arm_nodes, std::uint64_t budget) {
  auto values = arm_values(scm, y, arm_nodes, budget);
  return oracle_regret(history, arm_nodes, values);
}

NodeId estimated_best_arm(std::span<const BanditHistory> histories) {
  if (histories.empty()) throw Error(ErrorCode::kEmptyArmSet, "no runs to vote");
  std::map<NodeId, std::size_t> votes;
  for (const auto& h : histories) {
    if (h.arm_nodes.empty()) throw Error(ErrorCode::kEmptyArmSet, "run without arms");
    std::size_t best = 0;
    for (std::size_t i = 1; i < h.arm_nodes.size(); ++i) {
      if (h.final_stats[i].mean_reward > h.final_stats[best].mean_reward) best = i;
    }
    ++votes[h.arm_nodes[best]];
  }
  NodeId winner = votes.begin()->first;
  for (const auto& [node, count] : votes) {
    if (count > votes[winner]) winner = node;
  }
  return winner;
}

std::map<NodeId, double> pooled_means(std::span<const BanditHistory> histories) {
  std::map<NodeId, ArmStats> stats;
  for (const auto& h : histories) {
    for (const auto& round : h.rounds) stats[round.node].record(round.reward);
  }
  std::map<NodeId, double> means;
  for (const auto& [node, s] : stats) means[node] = s.mean_reward;
  return means;
}

std::vector<double> estimated_regret(const BanditHistory& history, NodeId best,
                                     const std::map<NodeId, double>& means) {
  auto mean_of = [&](NodeId node) {
    auto it = means.find(node);
    if (it == means.end()) throw Error(ErrorCode::kNodeOutOfRange, "no pooled mean for node " + std::to_string(node));
    return it->second;
  };
  const double top = mean_of(best);
  std::vector<double> regret;
  regret.reserve(history.rounds.size());
  double total = 0.0;
  for (const auto& round : history.rounds) {
    total += top - mean_of(round.node);
    regret.push_back(total);
  }
  return regret;
}

}  // namespace mgiss
