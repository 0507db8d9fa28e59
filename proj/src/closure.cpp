#include "mgiss/closure.hpp"

#include <algorithm>
#include <functional>

#include "mgiss/error.hpp"

namespace mgiss {

namespace {

void check_nodes(const Dag& dag, std::span<const NodeId> nodes) {
  for (NodeId v : nodes) {
    if (!dag.contains(v)) throw Error(ErrorCode::kNodeOutOfRange, "node " + std::to_string(v));
  }
}

// Breadth-first search from the children of `apex` for any target, never
// touching nodes in `blocked`. Returns the path apex -> ... -> target.
std::optional<Path> path_avoiding(const Dag& dag, NodeId apex, const std::vector<char>& is_target,
                                  const std::vector<char>& blocked) {
  const std::size_t n = dag.node_count();
  std::vector<NodeId> from(n, apex);
  std::vector<char> seen(n, 0);
  std::vector<NodeId> queue;
  for (NodeId c : dag.children(apex)) {
    if (blocked[c] || seen[c]) continue;
    seen[c] = 1;
    queue.push_back(c);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId v = queue[head];
    if (is_target[v]) {
      Path path;
      for (NodeId w = v; w != apex; w = from[w]) path.nodes.push_back(w);
      path.nodes.push_back(apex);
      std::reverse(path.nodes.begin(), path.nodes.end());
      return path;
    }
    for (NodeId c : dag.children(v)) {
      if (blocked[c] || seen[c]) continue;
      seen[c] = 1;
      from[c] = v;
      queue.push_back(c);
    }
  }
  return std::nullopt;
}

}  // namespace

NodeSet lsca_closure(const Dag& dag, std::span<const NodeId> nodes) {
  check_nodes(dag, nodes);
  NodeSet current = make_set({nodes.begin(), nodes.end()});
  for (;;) {
    auto added = lsca_set(dag, current);
    if (added.empty()) return current;
    current.insert(current.end(), added.begin(), added.end());
    current = make_set(std::move(current));
  }
}

std::optional<LambdaStructure> find_lambda_structure(const Dag& dag, NodeId apex,
                                                      std::span<const NodeId> targets) {
  check_nodes(dag, targets);
  if (!dag.contains(apex)) throw Error(ErrorCode::kNodeOutOfRange, "node " + std::to_string(apex));
  const std::size_t n = dag.node_count();
  std::vector<char> is_target(n, 0);
  for (NodeId t : targets) is_target[t] = 1;
  if (is_target[apex]) {
    return LambdaStructure{apex, Path{{apex}}, Path{{apex}}};
  }

  // Nodes that can still reach a target; other branches are dead ends.
  std::vector<char> useful(n, 0);
  auto order = dag.topo_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeId v = *it;
    useful[v] = is_target[v];
    for (NodeId c : dag.children(v)) useful[v] |= useful[c];
  }

  // Enumerate every simple path from the apex to its first target; for each,
  // ask whether a second target is reachable while avoiding that path.
  std::vector<char> on_path(n, 0);
  on_path[apex] = 1;
  std::vector<NodeId> stack{apex};
  std::optional<LambdaStructure> found;
  std::function<void(NodeId)> extend = [&](NodeId v) {
    for (NodeId c : dag.children(v)) {
      if (found) return;
      if (!useful[c]) continue;
      stack.push_back(c);
      on_path[c] = 1;
      if (is_target[c]) {
        std::vector<char> blocked = on_path;
        if (auto other = path_avoiding(dag, apex, is_target, blocked)) {
          found = LambdaStructure{apex, Path{stack}, std::move(*other)};
        }
      } else {
        extend(c);
      }
      on_path[c] = 0;
      stack.pop_back();
    }
  };
  extend(apex);
  return found;
}

NodeSet lambda_nodes(const Dag& dag, std::span<const NodeId> nodes, std::size_t max_nodes) {
  if (dag.node_count() > max_nodes) {
    throw Error(ErrorCode::kGraphTooLarge, std::to_string(dag.node_count()) +
                                               " nodes exceeds the oracle bound of " +
                                               std::to_string(max_nodes));
  }
  check_nodes(dag, nodes);
  NodeSet out;
  for (NodeId v = 0; v < dag.node_count(); ++v) {
    if (find_lambda_structure(dag, v, nodes)) out.push_back(v);
  }
  return out;
}

ConnectorResult c4(const Dag& dag, std::span<const NodeId> nodes) {
  check_nodes(dag, nodes);
  const std::size_t n = dag.node_count();
  ConnectorResult result;
  result.connector.assign(n, std::nullopt);
  std::vector<char> seeded(n, 0);
  for (NodeId u : nodes) {
    seeded[u] = 1;
    result.connector[u] = u;
  }
  std::uint64_t steps = 0;

  // Reverse topological order by Kahn's algorithm on out-degrees: sinks first.
  std::vector<std::size_t> pending(n);
  std::vector<NodeId> order;
  order.reserve(n);
  for (NodeId v = 0; v < n; ++v) {
    pending[v] = dag.children(v).size();
    if (pending[v] == 0) order.push_back(v);
    ++steps;
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    NodeId v = order[head];
    for (NodeId p : dag.parents(v)) {
      ++steps;
      if (--pending[p] == 0) order.push_back(p);
    }
  }

  for (NodeId v : order) {
    ++steps;
    if (seeded[v]) continue;
    std::optional<NodeId> first;
    bool several = false;
    for (NodeId c : dag.children(v)) {
      ++steps;
      const auto& cc = result.connector[c];
      if (!cc) continue;
      if (!first) {
        first = cc;
      } else if (*first != *cc) {
        several = true;
        break;
      }
    }
    result.connector[v] = several ? std::optional<NodeId>(v) : first;
  }

  for (NodeId v = 0; v < n; ++v) {
    if (result.connector[v] == v) result.members.push_back(v);
  }
  result.steps = steps;
  return result;
}

NodeSet mgiss(const Dag& dag, NodeId target) {
  if (!dag.contains(target)) throw Error(ErrorCode::kNodeOutOfRange, "node " + std::to_string(target));
  return c4(dag, dag.parents(target)).members;
}

std::optional<NodeId> connector_of(const ConnectorResult& result, NodeId v) {
  if (v >= result.connector.size()) throw Error(ErrorCode::kNodeOutOfRange, "node " + std::to_string(v));
  return result.connector[v];
}

}  // namespace mgiss
