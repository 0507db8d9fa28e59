#include "mgiss/witness.hpp"

#include <algorithm>
#include <numeric>

#include "mgiss/error.hpp"

namespace mgiss {

namespace {

constexpr Value kRewardRange = 4;
const std::vector<double> kFairCoin{0.5, 0.5};
const std::vector<double> kPointMass{1.0};

Value step(Value sum) { return sum > 0 ? 1 : 0; }

// Sum of the parent values of `v`, skipping the listed parents.
Value sum_except(const Dag& dag, NodeId v, std::span<const Value> pa, std::initializer_list<NodeId> skip) {
  auto parents = dag.parents(v);
  Value total = 0;
  for (std::size_t i = 0; i < parents.size(); ++i) {
    if (std::find(skip.begin(), skip.end(), parents[i]) == skip.end()) total += pa[i];
  }
  return total;
}

Value parent_value(const Dag& dag, NodeId v, std::span<const Value> pa, NodeId parent) {
  auto parents = dag.parents(v);
  auto it = std::lower_bound(parents.begin(), parents.end(), parent);
  return pa[static_cast<std::size_t>(it - parents.begin())];
}

std::vector<Value> binary_ranges(const Dag& dag, NodeId y) {
  std::vector<Value> ranges(dag.node_count(), 2);
  ranges[y] = kRewardRange;
  return ranges;
}

void check_node(const Dag& dag, NodeId v) {
  if (!dag.contains(v)) throw Error(ErrorCode::kNodeOutOfRange, "node " + std::to_string(v));
}

}  // namespace

Unit zero_unit(const Scm& scm) { return Unit{std::vector<Value>(scm.node_count(), 0)}; }

Scm witness_parent(const Dag& dag, NodeId y, NodeId b) {
  check_node(dag, y);
  check_node(dag, b);
  if (!dag.has_edge(b, y)) {
    throw Error(ErrorCode::kNotAParent, dag.label(b) + " is not a parent of " + dag.label(y));
  }
  std::vector<std::vector<double>> noise(dag.node_count(), kPointMass);
  noise[b] = kFairCoin;
  return Scm::from_function(Dag(dag), binary_ranges(dag, y), std::move(noise),
                            [&](NodeId v, std::span<const Value> pa, Value n) -> Value {
                              if (v == y) {
                                return 2 * parent_value(dag, y, pa, b) + step(sum_except(dag, y, pa, {b})) + n;
                              }
                              if (v == b) return n * (1 - step(sum_except(dag, b, pa, {})));
                              return step(sum_except(dag, v, pa, {})) + n;
                            });
}

Scm witness_lambda(const Dag& dag, NodeId y, NodeId b, const Path& path1, const Path& path2) {
  check_node(dag, y);
  check_node(dag, b);
  auto invalid = [](const std::string& why) { return Error(ErrorCode::kInvalidLambdaPaths, why); };
  for (const Path* p : {&path1, &path2}) {
    if (!is_path(dag, *p) || p->nodes.front() != b) throw invalid("paths must be graph paths starting at the apex");
    if (p->nodes.size() < 2) throw invalid("paths must leave the apex");
    if (!dag.has_edge(p->nodes.back(), y)) throw invalid("path endpoints must be parents of the target");
    if (std::find(p->nodes.begin(), p->nodes.end(), y) != p->nodes.end()) throw invalid("paths may not cross the target");
  }
  for (std::size_t i = 1; i < path1.nodes.size(); ++i) {
    if (std::find(path2.nodes.begin(), path2.nodes.end(), path1.nodes[i]) != path2.nodes.end()) {
      throw invalid("paths intersect beyond the apex");
    }
  }
  const NodeId a1 = path1.nodes.back();
  const NodeId a2 = path2.nodes.back();

  // Predecessor of each path node (other than the apex) on its path.
  std::vector<std::optional<NodeId>> predecessor(dag.node_count());
  for (const Path* p : {&path1, &path2}) {
    for (std::size_t i = 1; i < p->nodes.size(); ++i) predecessor[p->nodes[i]] = p->nodes[i - 1];
  }
  std::vector<std::vector<double>> noise(dag.node_count(), kPointMass);
  noise[b] = kFairCoin;
  for (NodeId v = 0; v < dag.node_count(); ++v) {
    if (predecessor[v]) noise[v] = kFairCoin;
  }
  return Scm::from_function(
      Dag(dag), binary_ranges(dag, y), std::move(noise),
      [&](NodeId v, std::span<const Value> pa, Value n) -> Value {
        if (v == y) {
          return 2 * parent_value(dag, y, pa, a1) * parent_value(dag, y, pa, a2) +
                 step(sum_except(dag, y, pa, {a1, a2})) + n;
        }
        if (v == b) return n * (1 - step(sum_except(dag, b, pa, {})));
        if (predecessor[v]) {
          NodeId prev = *predecessor[v];
          return std::min<Value>(1, parent_value(dag, v, pa, prev) + n * step(sum_except(dag, v, pa, {prev})));
        }
        return step(sum_except(dag, v, pa, {})) + n;
      });
}

Scm witness_path(const Dag& dag, NodeId y, NodeId w, const Path& path) {
  check_node(dag, y);
  check_node(dag, w);
  if (!is_path(dag, path) || path.nodes.size() < 2 || path.nodes.front() != w || path.nodes.back() != y) {
    throw Error(ErrorCode::kInvalidPath, "expected a path from " + dag.label(w) + " to " + dag.label(y));
  }
  const NodeId a = path.nodes[path.nodes.size() - 2];
  std::vector<std::optional<NodeId>> predecessor(dag.node_count());
  for (std::size_t i = 1; i + 1 < path.nodes.size(); ++i) predecessor[path.nodes[i]] = path.nodes[i - 1];
  std::vector<std::vector<double>> noise(dag.node_count(), kFairCoin);
  return Scm::from_function(
      Dag(dag), binary_ranges(dag, y), std::move(noise),
      [&](NodeId v, std::span<const Value> pa, Value n) -> Value {
        if (v == y) return 2 * parent_value(dag, y, pa, a) + n * step(sum_except(dag, y, pa, {a}));
        if (predecessor[v]) {
          NodeId prev = *predecessor[v];
          return std::min<Value>(1, parent_value(dag, v, pa, prev) + n * step(sum_except(dag, v, pa, {prev})));
        }
        return n * step(sum_except(dag, v, pa, {}));
      });
}

Scm minimality_witness(const Dag& dag, NodeId y, NodeId b) {
  check_node(dag, y);
  check_node(dag, b);
  if (dag.has_edge(b, y)) return witness_parent(dag, y, b);
  auto lambda = find_lambda_structure(dag, b, dag.parents(y));
  if (!lambda) {
    throw Error(ErrorCode::kInvalidLambdaPaths,
                dag.label(b) + " forms no Λ-structure over the parents of " + dag.label(y));
  }
  return witness_lambda(dag, y, b, lambda->path_a, lambda->path_b);
}

}  // namespace mgiss
