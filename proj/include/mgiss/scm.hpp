#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "mgiss/dag.hpp"

namespace mgiss {

/// Variable values are integers 0..range_size-1.
using Value = std::int32_t;

/// One realization of every noise variable, indexed by node.
struct Unit {
  std::vector<Value> noise;

  bool operator==(const Unit&) const = default;
};

/// One realization of every endogenous variable, indexed by node.
struct Assignment {
  std::vector<Value> values;

  bool operator==(const Assignment&) const = default;
};

struct AtomicIntervention {
  NodeId node = 0;
  Value value = 0;
};

/// do(X = g(Z_X)). `policy` is indexed row-major over the ranges of
/// `conditioning` (ascending node id, last node varying fastest).
struct ConditionalIntervention {
  NodeId node = 0;
  NodeSet conditioning;
  std::vector<Value> policy;
};

using Intervention = std::variant<AtomicIntervention, ConditionalIntervention>;

enum class MechanismKind { kTable, kConstant, kPolicy };

/// How a node obtains its value.
///
/// kTable: `table` is row-major over (values of `inputs`) × (noise value), with
/// `inputs` the node's parents in ascending id order and the noise index
/// varying fastest. kConstant: `table` holds one value. kPolicy: `table` is the
/// policy over the values of `inputs` (the conditioning set).
struct Mechanism {
  MechanismKind kind = MechanismKind::kTable;
  std::vector<NodeId> inputs;
  std::vector<Value> table;

  bool operator==(const Mechanism&) const = default;
};

/// Discrete structural causal model with finite ranges, lookup-table
/// assignments and independent finite-support noise.
class Scm {
 public:
  using Function = std::function<Value(NodeId node, std::span<const Value> parent_values, Value noise)>;

  Scm() = default;

  /// Validates table totality, value ranges and noise normalization
  /// (kInvalidModel on failure).
  static Scm build(Dag dag, std::vector<Value> range_sizes, std::vector<std::vector<double>> noise,
                   std::vector<std::vector<Value>> tables);

  /// Tabulates `fn` over every parent tuple and noise value.
  static Scm from_function(Dag dag, std::vector<Value> range_sizes,
                           std::vector<std::vector<double>> noise, const Function& fn);

  const Dag& dag() const noexcept { return dag_; }
  std::size_t node_count() const noexcept { return dag_.node_count(); }
  Value range_size(NodeId v) const { return ranges_.at(v); }
  const std::vector<Value>& range_sizes() const noexcept { return ranges_; }
  std::span<const double> noise(NodeId v) const { return noise_.at(v); }
  const Mechanism& mechanism(NodeId v) const { return mechanisms_.at(v); }

  /// Order in which every node's mechanism inputs are realized before it.
  std::span<const NodeId> evaluation_order() const noexcept { return order_; }

  /// Value of `v` given already-realized inputs in `values`.
  Value evaluate_node(NodeId v, std::span<const Value> values, Value noise) const;

  Assignment evaluate(const Unit& unit) const;

  /// Evaluation with `forced` pinned to `value`; equivalent to do(forced = value)
  /// without building a new model.
  Assignment evaluate_forced(const Unit& unit, NodeId forced, Value value) const;

  bool operator==(const Scm& other) const {
    return dag_ == other.dag_ && ranges_ == other.ranges_ && noise_ == other.noise_ &&
           mechanisms_ == other.mechanisms_;
  }

 private:
  friend Scm apply(const Scm& scm, const Intervention& iv);

  void finalize();

  Dag dag_;
  std::vector<Value> ranges_;
  std::vector<std::vector<double>> noise_;
  std::vector<Mechanism> mechanisms_;
  std::vector<NodeId> order_;
};

/// Value of `v` under unit `n`.
Value unrolled(const Scm& scm, NodeId v, const Unit& n);

/// Value of `target` when every dependence on `block` is cut and replaced by
/// `block_value`. Equals unrolled(target) outside the descendants of `block`.
Value blocked_unrolled(const Scm& scm, NodeId target, NodeId block, Value block_value, const Unit& n);

/// The post-intervention model. Atomic interventions also drop the node's
/// parent edges; conditional ones keep the graph and resolve the policy from the
/// realized conditioning set at evaluation time. Throws kValueOutOfRange,
/// kIncompletePolicy or kInvalidConditioningSet.
Scm apply(const Scm& scm, const Intervention& iv);

/// An(x) \ {x}, the smallest observable conditioning set.
NodeSet default_conditioning_set(const Dag& dag, NodeId x);

/// Policy for `x` over `conditioning` tabulated from `fn(context values)`.
ConditionalIntervention make_policy(const Scm& scm, NodeId x, NodeSet conditioning,
                                    const std::function<Value(std::span<const Value>)>& fn);

inline constexpr std::uint64_t kDefaultUnitBudget = 10'000'000;

/// Calls `fn(unit, probability)` for every unit in the joint noise support.
/// Throws kEnumerationBudgetExceeded when the support is larger than `budget`.
void for_each_unit(const Scm& scm, const std::function<void(const Unit&, double)>& fn,
                   std::uint64_t budget = kDefaultUnitBudget);

std::uint64_t unit_count(const Scm& scm);

/// Exact E[y] by unit enumeration.
double expectation(const Scm& scm, NodeId y, std::uint64_t budget = kDefaultUnitBudget);

/// Exact E[y] under the intervention.
double post_expectation(const Scm& scm, NodeId y, const Intervention& iv,
                        std::uint64_t budget = kDefaultUnitBudget);

/// max over x-values of y under do(x = value) at unit `n`.
Value max_atomic_outcome(const Scm& scm, const Unit& n, NodeId x, NodeId y);

/// Whether the best atomic intervention on x at unit `n` does at least as well
/// for y as the best atomic intervention on w.
bool det_superior(const Scm& scm, const Unit& n, NodeId x, NodeId w, NodeId y);

/// Best achievable E[y] by a conditional intervention on x over An(x) \ {x}:
/// the context-weighted sum of the best per-context interventional means.
double optimal_node_value(const Scm& scm, NodeId y, NodeId x, std::uint64_t budget = kDefaultUnitBudget);

Unit sample_unit(const Scm& scm, std::mt19937_64& rng);
Assignment sample(const Scm& scm, std::mt19937_64& rng);

/// Z, W fair coins; A = Z xor W; Y = A xor W. Node ids: Z=0, W=1, A=2, Y=3.
Scm xor_counterexample();

}  // namespace mgiss
