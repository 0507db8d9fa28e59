#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mgiss/dag.hpp"

namespace mgiss {

/// Output of the connector-propagation pass.
///
/// `connector[v]` is the unique member of the closure reachable from `v` by a
/// path whose interior avoids the closure, or nullopt when no closure member
/// descends from `v`. Members are exactly the nodes that are their own connector.
struct ConnectorResult {
  std::vector<std::optional<NodeId>> connector;
  NodeSet members;
  /// Elementary steps: node visits plus child inspections, including the
  /// reverse topological sort.
  std::uint64_t steps = 0;
};

/// An apex with two paths that share only the apex.
struct LambdaStructure {
  NodeId apex = 0;
  Path path_a;
  Path path_b;
};

/// Fixed point of U ← U ∪ LSCA(U). Quadratic in |U| per round; use c4 for real work.
NodeSet lsca_closure(const Dag& dag, std::span<const NodeId> nodes);

/// Default node bound for the exponential Λ-structure oracle.
inline constexpr std::size_t kLambdaOracleBound = 15;

/// Every node forming a Λ-structure over (U, U), by path enumeration. Members
/// of U qualify through trivial paths. Throws kGraphTooLarge above `max_nodes`.
NodeSet lambda_nodes(const Dag& dag, std::span<const NodeId> nodes,
                     std::size_t max_nodes = kLambdaOracleBound);

/// A Λ-structure with apex `apex` over two distinct members of `targets`, if one
/// exists. Paths stop at the first target they meet.
std::optional<LambdaStructure> find_lambda_structure(const Dag& dag, NodeId apex,
                                                      std::span<const NodeId> targets);

/// Linear-time closure: seeds connector[u] = u for u in U, then visits the
/// remaining nodes in reverse topological order and looks at the distinct
/// connectors of their children. None leaves the node unconnected, one is
/// inherited, two or more make the node a closure member.
ConnectorResult c4(const Dag& dag, std::span<const NodeId> nodes);

/// The minimal globally interventionally superior set for `target`:
/// the closure of its parents. Empty for parentless targets.
NodeSet mgiss(const Dag& dag, NodeId target);

std::optional<NodeId> connector_of(const ConnectorResult& result, NodeId v);

}  // namespace mgiss
