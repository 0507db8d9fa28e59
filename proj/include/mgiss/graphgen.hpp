#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mgiss/dag.hpp"

namespace mgiss {

struct ErdosRenyiDagConfig {
  std::size_t node_count = 0;
  double expected_degree = 0.0;
  std::uint64_t seed = 0;
};

/// Each pair i < j gets the edge i -> j independently with probability
/// expected_degree / (node_count - 1), so the expected total degree is
/// expected_degree. Requires 0 < expected_degree <= node_count - 1
/// (kInvalidDegree otherwise).
Dag gen_er_dag(const ErdosRenyiDagConfig& cfg);

/// Among nodes with more than one parent, the one with the most proper
/// ancestors (smallest id on ties). nullopt when no node has two parents.
std::optional<NodeId> select_target(const Dag& dag);

struct ReductionRecord {
  std::string graph_id;
  std::size_t node_count = 0;
  std::optional<double> expected_degree;
  std::string target;
  std::size_t ancestor_count = 0;
  std::size_t mgiss_size = 0;
  double fraction = 0.0;
};

/// mGISS size over the number of proper ancestors of `y`. Throws kNoParents.
ReductionRecord reduction_fraction(const Dag& dag, NodeId y);

}  // namespace mgiss
