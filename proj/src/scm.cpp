#include "mgiss/scm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include "mgiss/error.hpp"

namespace mgiss {

namespace {

constexpr double kNoiseTolerance = 1e-12;

std::size_t product_of_ranges(const std::vector<Value>& ranges, std::span<const NodeId> nodes) {
  std::size_t size = 1;
  for (NodeId v : nodes) size *= static_cast<std::size_t>(ranges[v]);
  return size;
}

// Row-major index of the input values, last input varying fastest.
std::size_t input_index(const std::vector<Value>& ranges, std::span<const NodeId> inputs,
                        std::span<const Value> values) {
  std::size_t index = 0;
  for (NodeId in : inputs) index = index * static_cast<std::size_t>(ranges[in]) + static_cast<std::size_t>(values[in]);
  return index;
}

void check_node(const Scm& scm, NodeId v) {
  if (v >= scm.node_count()) throw Error(ErrorCode::kNodeOutOfRange, "node " + std::to_string(v));
}

void check_unit(const Scm& scm, const Unit& n) {
  if (n.noise.size() != scm.node_count()) {
    throw Error(ErrorCode::kInvalidModel, "unit has " + std::to_string(n.noise.size()) + " entries for " +
                                              std::to_string(scm.node_count()) + " nodes");
  }
  for (NodeId v = 0; v < scm.node_count(); ++v) {
    if (n.noise[v] < 0 || static_cast<std::size_t>(n.noise[v]) >= scm.noise(v).size()) {
      throw Error(ErrorCode::kValueOutOfRange, "noise value outside the support of node " + std::to_string(v));
    }
  }
}

}  // namespace

Scm Scm::build(Dag dag, std::vector<Value> range_sizes, std::vector<std::vector<double>> noise,
               std::vector<std::vector<Value>> tables) {
  const std::size_t n = dag.node_count();
  if (range_sizes.size() != n || noise.size() != n || tables.size() != n) {
    throw Error(ErrorCode::kInvalidModel, "per-node vectors must have one entry per node");
  }
  Scm scm;
  scm.dag_ = std::move(dag);
  scm.ranges_ = std::move(range_sizes);
  scm.noise_ = std::move(noise);
  for (NodeId v = 0; v < n; ++v) {
    if (scm.ranges_[v] < 1) throw Error(ErrorCode::kInvalidModel, "empty range on node " + std::to_string(v));
    const auto& p = scm.noise_[v];
    if (p.empty()) throw Error(ErrorCode::kInvalidModel, "empty noise support on node " + std::to_string(v));
    double total = 0.0;
    for (double q : p) {
      if (!(q >= 0.0)) throw Error(ErrorCode::kInvalidModel, "negative noise probability on node " + std::to_string(v));
      total += q;
    }
    if (std::abs(total - 1.0) > kNoiseTolerance) {
      throw Error(ErrorCode::kInvalidModel, "noise of node " + std::to_string(v) + " sums to " + std::to_string(total));
    }
  }
  scm.mechanisms_.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    auto parents = scm.dag_.parents(v);
    std::size_t expected = product_of_ranges(scm.ranges_, parents) * scm.noise_[v].size();
    if (tables[v].size() != expected) {
      throw Error(ErrorCode::kInvalidModel, "table of node " + std::to_string(v) + " has " +
                                                std::to_string(tables[v].size()) + " entries, expected " +
                                                std::to_string(expected));
    }
    for (Value x : tables[v]) {
      if (x < 0 || x >= scm.ranges_[v]) {
        throw Error(ErrorCode::kInvalidModel, "table of node " + std::to_string(v) + " leaves its range");
      }
    }
    scm.mechanisms_[v] = Mechanism{MechanismKind::kTable, {parents.begin(), parents.end()}, std::move(tables[v])};
  }
  scm.finalize();
  return scm;
}

Scm Scm::from_function(Dag dag, std::vector<Value> range_sizes, std::vector<std::vector<double>> noise,
                       const Function& fn) {
  const std::size_t n = dag.node_count();
  if (range_sizes.size() != n || noise.size() != n) {
    throw Error(ErrorCode::kInvalidModel, "per-node vectors must have one entry per node");
  }
  std::vector<std::vector<Value>> tables(n);
  for (NodeId v = 0; v < n; ++v) {
    auto parents = dag.parents(v);
    std::vector<Value> digits(parents.size(), 0);
    const std::size_t rows = product_of_ranges(range_sizes, parents);
    for (std::size_t row = 0; row < rows; ++row) {
      for (std::size_t e = 0; e < noise[v].size(); ++e) {
        tables[v].push_back(fn(v, digits, static_cast<Value>(e)));
      }
      for (std::size_t k = digits.size(); k-- > 0;) {
        if (++digits[k] < range_sizes[parents[k]]) break;
        digits[k] = 0;
      }
    }
  }
  return build(std::move(dag), std::move(range_sizes), std::move(noise), std::move(tables));
}

void Scm::finalize() {
  const std::size_t n = dag_.node_count();
  std::vector<std::vector<NodeId>> users(n);
  std::vector<std::size_t> pending(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId in : mechanisms_[v].inputs) users[in].push_back(v);
    pending[v] = mechanisms_[v].inputs.size();
  }
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (NodeId v = 0; v < n; ++v) {
    if (pending[v] == 0) ready.push(v);
  }
  order_.clear();
  while (!ready.empty()) {
    NodeId v = ready.top();
    ready.pop();
    order_.push_back(v);
    for (NodeId u : users[v]) {
      if (--pending[u] == 0) ready.push(u);
    }
  }
  if (order_.size() != n) throw Error(ErrorCode::kCycleDetected, "mechanism inputs form a cycle");
}

Value Scm::evaluate_node(NodeId v, std::span<const Value> values, Value noise) const {
  const Mechanism& m = mechanisms_[v];
  switch (m.kind) {
    case MechanismKind::kConstant:
      return m.table.front();
    case MechanismKind::kPolicy:
      return m.table[input_index(ranges_, m.inputs, values)];
    case MechanismKind::kTable:
      break;
  }
  std::size_t row = input_index(ranges_, m.inputs, values);
  return m.table[row * noise_[v].size() + static_cast<std::size_t>(noise)];
}

Assignment Scm::evaluate(const Unit& unit) const {
  Assignment out{std::vector<Value>(node_count(), 0)};
  for (NodeId v : order_) out.values[v] = evaluate_node(v, out.values, unit.noise[v]);
  return out;
}

Assignment Scm::evaluate_forced(const Unit& unit, NodeId forced, Value value) const {
  Assignment out{std::vector<Value>(node_count(), 0)};
  for (NodeId v : order_) {
    out.values[v] = v == forced ? value : evaluate_node(v, out.values, unit.noise[v]);
  }
  return out;
}

Value unrolled(const Scm& scm, NodeId v, const Unit& n) {
  check_node(scm, v);
  check_unit(scm, n);
  return scm.evaluate(n).values[v];
}

Value blocked_unrolled(const Scm& scm, NodeId target, NodeId block, Value block_value, const Unit& n) {
  check_node(scm, target);
  check_node(scm, block);
  check_unit(scm, n);
  if (block_value < 0 || block_value >= scm.range_size(block)) {
    throw Error(ErrorCode::kValueOutOfRange, "block value " + std::to_string(block_value));
  }
  const std::size_t count = scm.node_count();
  // Descendants of the block through mechanism inputs.
  std::vector<std::vector<NodeId>> users(count);
  for (NodeId v = 0; v < count; ++v) {
    for (NodeId in : scm.mechanism(v).inputs) users[in].push_back(v);
  }
  std::vector<char> below(count, 0);
  std::vector<NodeId> stack{block};
  below[block] = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId u : users[v]) {
      if (!below[u]) {
        below[u] = 1;
        stack.push_back(u);
      }
    }
  }
  const auto plain = scm.evaluate(n).values;
  if (!below[target]) return plain[target];

  std::vector<Value> cut = plain;
  for (NodeId v : scm.evaluation_order()) {
    if (!below[v]) continue;
    cut[v] = v == block ? block_value : scm.evaluate_node(v, cut, n.noise[v]);
  }
  return cut[target];
}

NodeSet default_conditioning_set(const Dag& dag, NodeId x) { return proper_ancestors(dag, x); }

ConditionalIntervention make_policy(const Scm& scm, NodeId x, NodeSet conditioning,
                                    const std::function<Value(std::span<const Value>)>& fn) {
  check_node(scm, x);
  ConditionalIntervention iv{x, make_set(std::move(conditioning)), {}};
  std::vector<Value> digits(iv.conditioning.size(), 0);
  const std::size_t rows = product_of_ranges(scm.range_sizes(), iv.conditioning);
  iv.policy.reserve(rows);
  for (std::size_t row = 0; row < rows; ++row) {
    iv.policy.push_back(fn(digits));
    for (std::size_t k = digits.size(); k-- > 0;) {
      if (++digits[k] < scm.range_size(iv.conditioning[k])) break;
      digits[k] = 0;
    }
  }
  return iv;
}

Scm apply(const Scm& scm, const Intervention& iv) {
  Scm out;
  if (const auto* atomic = std::get_if<AtomicIntervention>(&iv)) {
    check_node(scm, atomic->node);
    if (atomic->value < 0 || atomic->value >= scm.range_size(atomic->node)) {
      throw Error(ErrorCode::kValueOutOfRange, "value " + std::to_string(atomic->value) + " for node " +
                                                   std::to_string(atomic->node));
    }
    out = scm;
    out.dag_ = scm.dag_.without_parents(atomic->node);
    out.mechanisms_[atomic->node] = Mechanism{MechanismKind::kConstant, {}, {atomic->value}};
    out.finalize();
    return out;
  }

  const auto& cond = std::get<ConditionalIntervention>(iv);
  check_node(scm, cond.node);
  NodeSet conditioning = make_set(cond.conditioning);
  if (conditioning != cond.conditioning) {
    throw Error(ErrorCode::kInvalidConditioningSet, "conditioning set must be sorted and duplicate-free");
  }
  auto required = proper_ancestors(scm.dag(), cond.node);
  auto forbidden = descendants(scm.dag(), cond.node);
  for (NodeId a : required) {
    if (!set_contains(conditioning, a)) {
      throw Error(ErrorCode::kInvalidConditioningSet, "missing ancestor " + std::to_string(a));
    }
  }
  for (NodeId z : conditioning) {
    check_node(scm, z);
    if (set_contains(forbidden, z)) {
      throw Error(ErrorCode::kInvalidConditioningSet, "node " + std::to_string(z) + " is a descendant");
    }
  }
  if (cond.policy.size() != product_of_ranges(scm.range_sizes(), conditioning)) {
    throw Error(ErrorCode::kIncompletePolicy, "policy has " + std::to_string(cond.policy.size()) +
                                                  " entries, expected one per context");
  }
  for (Value x : cond.policy) {
    if (x < 0 || x >= scm.range_size(cond.node)) {
      throw Error(ErrorCode::kValueOutOfRange, "policy value " + std::to_string(x));
    }
  }
  out = scm;
  out.mechanisms_[cond.node] = Mechanism{MechanismKind::kPolicy, conditioning, cond.policy};
  out.finalize();
  return out;
}

std::uint64_t unit_count(const Scm& scm) {
  std::uint64_t total = 1;
  for (NodeId v = 0; v < scm.node_count(); ++v) {
    std::uint64_t k = scm.noise(v).size();
    if (total > UINT64_MAX / k) return UINT64_MAX;
    total *= k;
  }
  return total;
}

void for_each_unit(const Scm& scm, const std::function<void(const Unit&, double)>& fn, std::uint64_t budget) {
  const std::uint64_t total = unit_count(scm);
  if (total > budget) {
    throw Error(ErrorCode::kEnumerationBudgetExceeded,
                std::to_string(total) + " units exceeds the budget of " + std::to_string(budget));
  }
  const std::size_t n = scm.node_count();
  Unit unit{std::vector<Value>(n, 0)};
  for (std::uint64_t i = 0; i < total; ++i) {
    double p = 1.0;
    for (NodeId v = 0; v < n; ++v) p *= scm.noise(v)[static_cast<std::size_t>(unit.noise[v])];
    if (p > 0.0) fn(unit, p);
    for (std::size_t k = n; k-- > 0;) {
      if (static_cast<std::size_t>(++unit.noise[k]) < scm.noise(static_cast<NodeId>(k)).size()) break;
      unit.noise[k] = 0;
    }
  }
}

double expectation(const Scm& scm, NodeId y, std::uint64_t budget) {
  check_node(scm, y);
  double total = 0.0;
  for_each_unit(scm, [&](const Unit& n, double p) { total += p * scm.evaluate(n).values[y]; }, budget);
  return total;
}

double post_expectation(const Scm& scm, NodeId y, const Intervention& iv, std::uint64_t budget) {
  return expectation(apply(scm, iv), y, budget);
}

Value max_atomic_outcome(const Scm& scm, const Unit& n, NodeId x, NodeId y) {
  check_node(scm, x);
  check_node(scm, y);
  check_unit(scm, n);
  Value best = 0;
  for (Value value = 0; value < scm.range_size(x); ++value) {
    best = std::max(best, scm.evaluate_forced(n, x, value).values[y]);
  }
  return best;
}

bool det_superior(const Scm& scm, const Unit& n, NodeId x, NodeId w, NodeId y) {
  return max_atomic_outcome(scm, n, x, y) >= max_atomic_outcome(scm, n, w, y);
}

double optimal_node_value(const Scm& scm, NodeId y, NodeId x, std::uint64_t budget) {
  check_node(scm, x);
  check_node(scm, y);
  const auto context_nodes = default_conditioning_set(scm.dag(), x);
  const auto range = static_cast<std::size_t>(scm.range_size(x));
  // Per context: probability-weighted sum of y for each value of x.
  std::map<std::vector<Value>, std::vector<double>> by_context;
  std::vector<Value> key(context_nodes.size());
  for_each_unit(
      scm,
      [&](const Unit& n, double p) {
        const auto observed = scm.evaluate(n).values;
        for (std::size_t i = 0; i < context_nodes.size(); ++i) key[i] = observed[context_nodes[i]];
        auto& sums = by_context.try_emplace(key, range, 0.0).first->second;
        for (std::size_t value = 0; value < range; ++value) {
          sums[value] += p * scm.evaluate_forced(n, x, static_cast<Value>(value)).values[y];
        }
      },
      budget);
  double total = 0.0;
  for (const auto& [context, sums] : by_context) total += *std::max_element(sums.begin(), sums.end());
  return total;
}

Unit sample_unit(const Scm& scm, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Unit unit{std::vector<Value>(scm.node_count(), 0)};
  for (NodeId v = 0; v < scm.node_count(); ++v) {
    auto p = scm.noise(v);
    if (p.size() == 1) continue;
    double u = uniform(rng);
    std::size_t k = 0;
    double cumulative = p[0];
    while (u >= cumulative && k + 1 < p.size()) cumulative += p[++k];
    unit.noise[v] = static_cast<Value>(k);
  }
  return unit;
}

Assignment sample(const Scm& scm, std::mt19937_64& rng) { return scm.evaluate(sample_unit(scm, rng)); }

Scm xor_counterexample() {
  const std::vector<Edge> edges{{0, 2}, {1, 2}, {2, 3}, {1, 3}};
  Dag dag = Dag::build(4, edges, {"Z", "W", "A", "Y"});
  std::vector<std::vector<double>> noise{{0.5, 0.5}, {0.5, 0.5}, {1.0}, {1.0}};
  return Scm::from_function(std::move(dag), {2, 2, 2, 2}, std::move(noise),
                            [](NodeId v, std::span<const Value> pa, Value n) -> Value {
                              // A's parents are (Z, W); Y's parents are (W, A).
                              switch (v) {
                                case 0:
                                case 1: return n;
                                default: return pa[0] ^ pa[1];
                              }
                            });
}

}  // namespace mgiss
