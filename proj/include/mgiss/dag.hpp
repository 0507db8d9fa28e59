#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mgiss {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Sorted, duplicate-free list of node ids. All set-valued queries return this.
using NodeSet = std::vector<NodeId>;

/// A sequence of nodes where consecutive entries are edges. A single node is a
/// valid (trivial) path.
struct Path {
  std::vector<NodeId> nodes;

  bool operator==(const Path&) const = default;
};

/// Immutable directed acyclic graph over dense ids 0..node_count-1.
///
/// Adjacency is stored in both directions, each list sorted ascending. The
/// topological order is computed once at construction (Kahn's algorithm, ties
/// broken by the smallest id) and doubles as the acyclicity check.
class Dag {
 public:
  Dag() = default;

  /// Throws Error with kNodeOutOfRange, kSelfLoop, kDuplicateEdge or kCycleDetected.
  /// Labels are optional; missing labels default to the decimal id.
  static Dag build(std::size_t node_count, std::span<const Edge> edges,
                   std::vector<std::string> labels = {});

  std::size_t node_count() const noexcept { return children_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  std::span<const NodeId> children(NodeId v) const { return children_.at(v); }
  std::span<const NodeId> parents(NodeId v) const { return parents_.at(v); }

  bool has_edge(NodeId from, NodeId to) const;
  bool contains(NodeId v) const noexcept { return v < node_count(); }

  const std::string& label(NodeId v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<NodeId> find(std::string_view label) const;

  std::span<const NodeId> topo_order() const noexcept { return topo_; }

  /// Edges sorted by (from, to).
  std::vector<Edge> edges() const;

  /// Same node set and labels with the parent edges of `v` removed.
  Dag without_parents(NodeId v) const;

  bool operator==(const Dag& other) const {
    return children_ == other.children_ && labels_ == other.labels_;
  }

 private:
  std::vector<std::vector<NodeId>> children_;
  std::vector<std::vector<NodeId>> parents_;
  std::vector<std::string> labels_;
  std::vector<NodeId> topo_;
  std::size_t edge_count_ = 0;
};

std::vector<NodeId> topo_order(const Dag& dag);

/// Reflexive: `v` is always a member.
NodeSet ancestors(const Dag& dag, NodeId v);
NodeSet descendants(const Dag& dag, NodeId v);
NodeSet proper_ancestors(const Dag& dag, NodeId v);

/// True when `to` is reachable from `from` (reflexive).
bool reaches(const Dag& dag, NodeId from, NodeId to);

/// |An(v) \ {v}| for every node, computed with bitsets along the topological order.
std::vector<std::size_t> proper_ancestor_counts(const Dag& dag);

bool is_path(const Dag& dag, const Path& path);

/// Lowest common ancestors: members of An(x) ∩ An(y) with no other common
/// ancestor among their proper descendants.
NodeSet lca(const Dag& dag, NodeId x, NodeId y);

/// Strict common ancestors: nodes with a path to x avoiding y and a path to y
/// avoiding x. Requires x != y.
NodeSet sca(const Dag& dag, NodeId x, NodeId y);

/// Members of sca(x, y) from which no other member of sca(x, y) is reachable.
NodeSet lsca_pair(const Dag& dag, NodeId x, NodeId y);

/// Union of lsca_pair over all unordered pairs of `nodes`, minus `nodes` itself.
NodeSet lsca_set(const Dag& dag, std::span<const NodeId> nodes);

/// Sorts and deduplicates.
NodeSet make_set(std::vector<NodeId> nodes);
bool set_contains(const NodeSet& set, NodeId v);

}  // namespace mgiss
