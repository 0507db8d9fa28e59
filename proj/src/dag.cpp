#include "mgiss/dag.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <queue>

#include "mgiss/error.hpp"

namespace mgiss {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNodeOutOfRange: return "NodeOutOfRange";
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kGraphTooLarge: return "GraphTooLarge";
    case ErrorCode::kValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::kIncompletePolicy: return "IncompletePolicy";
    case ErrorCode::kInvalidConditioningSet: return "InvalidConditioningSet";
    case ErrorCode::kInvalidModel: return "InvalidModel";
    case ErrorCode::kEnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case ErrorCode::kNotAParent: return "NotAParent";
    case ErrorCode::kInvalidLambdaPaths: return "InvalidLambdaPaths";
    case ErrorCode::kInvalidPath: return "InvalidPath";
    case ErrorCode::kEmptyArmSet: return "EmptyArmSet";
    case ErrorCode::kHorizonTooSmall: return "HorizonTooSmall";
    case ErrorCode::kInvalidDegree: return "InvalidDegree";
    case ErrorCode::kNoParents: return "NoParents";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnknownVariable: return "UnknownVariable";
    case ErrorCode::kTargetNotFound: return "TargetNotFound";
  }
  return "Unknown";
}

Dag Dag::build(std::size_t node_count, std::span<const Edge> edges, std::vector<std::string> labels) {
  Dag dag;
  dag.children_.assign(node_count, {});
  dag.parents_.assign(node_count, {});
  for (const auto& [from, to] : edges) {
    if (from >= node_count || to >= node_count) {
      throw Error(ErrorCode::kNodeOutOfRange,
                  "edge (" + std::to_string(from) + ", " + std::to_string(to) + ") with " +
                      std::to_string(node_count) + " nodes");
    }
    if (from == to) {
      throw Error(ErrorCode::kSelfLoop, "self-loop on node " + std::to_string(from));
    }
    dag.children_[from].push_back(to);
    dag.parents_[to].push_back(from);
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    auto& ch = dag.children_[v];
    std::sort(ch.begin(), ch.end());
    if (std::adjacent_find(ch.begin(), ch.end()) != ch.end()) {
      auto dup = *std::adjacent_find(ch.begin(), ch.end());
      throw Error(ErrorCode::kDuplicateEdge,
                  "edge (" + std::to_string(v) + ", " + std::to_string(dup) + ") listed twice");
    }
    std::sort(dag.parents_[v].begin(), dag.parents_[v].end());
  }
  dag.edge_count_ = edges.size();

  if (labels.empty()) {
    labels.reserve(node_count);
    for (std::size_t v = 0; v < node_count; ++v) labels.push_back(std::to_string(v));
  } else if (labels.size() != node_count) {
    throw Error(ErrorCode::kNodeOutOfRange, "label count does not match node count");
  }
  dag.labels_ = std::move(labels);

  std::vector<std::size_t> indegree(node_count);
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (std::size_t v = 0; v < node_count; ++v) {
    indegree[v] = dag.parents_[v].size();
    if (indegree[v] == 0) ready.push(static_cast<NodeId>(v));
  }
  dag.topo_.reserve(node_count);
  while (!ready.empty()) {
    NodeId v = ready.top();
    ready.pop();
    dag.topo_.push_back(v);
    for (NodeId c : dag.children_[v]) {
      if (--indegree[c] == 0) ready.push(c);
    }
  }
  if (dag.topo_.size() != node_count) {
    throw Error(ErrorCode::kCycleDetected, "edge set admits no topological order");
  }
  return dag;
}

bool Dag::has_edge(NodeId from, NodeId to) const {
  const auto& ch = children_.at(from);
  return std::binary_search(ch.begin(), ch.end(), to);
}

std::optional<NodeId> Dag::find(std::string_view label) const {
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    if (labels_[v] == label) return static_cast<NodeId>(v);
  }
  return std::nullopt;
}

std::vector<Edge> Dag::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t v = 0; v < children_.size(); ++v) {
    for (NodeId c : children_[v]) out.emplace_back(static_cast<NodeId>(v), c);
  }
  return out;
}

Dag Dag::without_parents(NodeId v) const {
  std::vector<Edge> kept;
  for (const auto& e : edges()) {
    if (e.second != v) kept.push_back(e);
  }
  return build(node_count(), kept, labels_);
}

std::vector<NodeId> topo_order(const Dag& dag) {
  auto order = dag.topo_order();
  return {order.begin(), order.end()};
}

namespace {

// Reflexive reachability from `start`, following `next`, never entering `blocked`.
template <typename Next>
std::vector<char> reach_mask(const Dag& dag, NodeId start, Next next,
                             std::optional<NodeId> blocked = std::nullopt) {
  std::vector<char> seen(dag.node_count(), 0);
  if (blocked == start) return seen;
  std::vector<NodeId> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId w : next(v)) {
      if (seen[w] || blocked == w) continue;
      seen[w] = 1;
      stack.push_back(w);
    }
  }
  return seen;
}

std::vector<char> ancestor_mask(const Dag& dag, NodeId v, std::optional<NodeId> blocked = std::nullopt) {
  return reach_mask(dag, v, [&](NodeId u) { return dag.parents(u); }, blocked);
}

std::vector<char> descendant_mask(const Dag& dag, NodeId v) {
  return reach_mask(dag, v, [&](NodeId u) { return dag.children(u); });
}

NodeSet mask_to_set(const std::vector<char>& mask) {
  NodeSet out;
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (mask[v]) out.push_back(static_cast<NodeId>(v));
  }
  return out;
}

void check_node(const Dag& dag, NodeId v) {
  if (!dag.contains(v)) {
    throw Error(ErrorCode::kNodeOutOfRange, "node " + std::to_string(v));
  }
}

}  // namespace

NodeSet ancestors(const Dag& dag, NodeId v) {
  check_node(dag, v);
  return mask_to_set(ancestor_mask(dag, v));
}

NodeSet descendants(const Dag& dag, NodeId v) {
  check_node(dag, v);
  return mask_to_set(descendant_mask(dag, v));
}

NodeSet proper_ancestors(const Dag& dag, NodeId v) {
  auto out = ancestors(dag, v);
  out.erase(std::lower_bound(out.begin(), out.end(), v));
  return out;
}

bool reaches(const Dag& dag, NodeId from, NodeId to) {
  check_node(dag, from);
  check_node(dag, to);
  return descendant_mask(dag, from)[to] != 0;
}

std::vector<std::size_t> proper_ancestor_counts(const Dag& dag) {
  const std::size_t n = dag.node_count();
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> bits(n * words, 0);
  std::vector<std::size_t> counts(n, 0);
  for (NodeId v : dag.topo_order()) {
    std::uint64_t* row = bits.data() + static_cast<std::size_t>(v) * words;
    for (NodeId p : dag.parents(v)) {
      const std::uint64_t* prow = bits.data() + static_cast<std::size_t>(p) * words;
      for (std::size_t w = 0; w < words; ++w) row[w] |= prow[w];
      row[p / 64] |= std::uint64_t{1} << (p % 64);
    }
    std::size_t c = 0;
    for (std::size_t w = 0; w < words; ++w) c += static_cast<std::size_t>(std::popcount(row[w]));
    counts[v] = c;
  }
  return counts;
}

bool is_path(const Dag& dag, const Path& path) {
  if (path.nodes.empty()) return false;
  for (NodeId v : path.nodes) {
    if (!dag.contains(v)) return false;
  }
  for (std::size_t i = 1; i < path.nodes.size(); ++i) {
    if (!dag.has_edge(path.nodes[i - 1], path.nodes[i])) return false;
  }
  return true;
}

NodeSet lca(const Dag& dag, NodeId x, NodeId y) {
  check_node(dag, x);
  check_node(dag, y);
  auto ax = ancestor_mask(dag, x);
  auto ay = ancestor_mask(dag, y);
  NodeSet common;
  for (std::size_t v = 0; v < dag.node_count(); ++v) {
    if (ax[v] && ay[v]) common.push_back(static_cast<NodeId>(v));
  }
  NodeSet out;
  for (NodeId a : common) {
    auto below = descendant_mask(dag, a);
    bool lowest = std::none_of(common.begin(), common.end(),
                               [&](NodeId b) { return b != a && below[b]; });
    if (lowest) out.push_back(a);
  }
  return out;
}

NodeSet sca(const Dag& dag, NodeId x, NodeId y) {
  check_node(dag, x);
  check_node(dag, y);
  if (x == y) return {};
  auto to_x = ancestor_mask(dag, x, y);
  auto to_y = ancestor_mask(dag, y, x);
  NodeSet out;
  for (std::size_t v = 0; v < dag.node_count(); ++v) {
    if (to_x[v] && to_y[v]) out.push_back(static_cast<NodeId>(v));
  }
  return out;
}

NodeSet lsca_pair(const Dag& dag, NodeId x, NodeId y) {
  auto strict = sca(dag, x, y);
  NodeSet out;
  for (NodeId a : strict) {
    auto below = descendant_mask(dag, a);
    bool lowest = std::none_of(strict.begin(), strict.end(),
                               [&](NodeId b) { return b != a && below[b]; });
    if (lowest) out.push_back(a);
  }
  return out;
}

NodeSet lsca_set(const Dag& dag, std::span<const NodeId> nodes) {
  NodeSet base = make_set({nodes.begin(), nodes.end()});
  std::vector<char> found(dag.node_count(), 0);
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = i + 1; j < base.size(); ++j) {
      for (NodeId v : lsca_pair(dag, base[i], base[j])) found[v] = 1;
    }
  }
  for (NodeId u : base) found[u] = 0;
  return mask_to_set(found);
}

NodeSet make_set(std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

bool set_contains(const NodeSet& set, NodeId v) {
  return std::binary_search(set.begin(), set.end(), v);
}

}  // namespace mgiss
