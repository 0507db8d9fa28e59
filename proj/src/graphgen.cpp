#include "mgiss/graphgen.hpp"

#include <cmath>
#include <random>

#include "mgiss/closure.hpp"
#include "mgiss/error.hpp"

namespace mgiss {

Dag gen_er_dag(const ErdosRenyiDagConfig& cfg) {
  const std::size_t n = cfg.node_count;
  if (n < 2 || !(cfg.expected_degree > 0.0) || cfg.expected_degree > static_cast<double>(n - 1)) {
    throw Error(ErrorCode::kInvalidDegree, "expected degree " + std::to_string(cfg.expected_degree) +
                                               " with " + std::to_string(n) + " nodes");
  }
  const double p = cfg.expected_degree / static_cast<double>(n - 1);
  std::mt19937_64 rng(cfg.seed);
  std::vector<Edge> edges;

  // Walk the upper-triangular pairs in row-major order, jumping over the
  // geometric gaps between successive edges.
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  // Pair indices arrive in increasing order, so the row cursor only moves forward.
  std::uint64_t row = 0;
  std::uint64_t row_start = 0;
  auto emit = [&](std::uint64_t k) {
    while (k >= row_start + (n - 1 - row)) {
      row_start += n - 1 - row;
      ++row;
    }
    edges.emplace_back(static_cast<NodeId>(row), static_cast<NodeId>(row + 1 + (k - row_start)));
  };
  if (p >= 1.0) {
    for (std::uint64_t k = 0; k < pairs; ++k) emit(k);
  } else {
    std::geometric_distribution<std::uint64_t> gap(p);
    for (std::uint64_t k = gap(rng); k < pairs; k += gap(rng) + 1) emit(k);
  }
  return Dag::build(n, edges);
}

std::optional<NodeId> select_target(const Dag& dag) {
  auto counts = proper_ancestor_counts(dag);
  std::optional<NodeId> best;
  for (NodeId v = 0; v < dag.node_count(); ++v) {
    if (dag.parents(v).size() < 2) continue;
    if (!best || counts[v] > counts[*best]) best = v;
  }
  return best;
}

ReductionRecord reduction_fraction(const Dag& dag, NodeId y) {
  if (!dag.contains(y)) throw Error(ErrorCode::kNodeOutOfRange, "node " + std::to_string(y));
  if (dag.parents(y).empty()) throw Error(ErrorCode::kNoParents, dag.label(y) + " has no parents");
  ReductionRecord record;
  record.node_count = dag.node_count();
  record.target = dag.label(y);
  record.ancestor_count = proper_ancestors(dag, y).size();
  record.mgiss_size = mgiss(dag, y).size();
  record.fraction = static_cast<double>(record.mgiss_size) / static_cast<double>(record.ancestor_count);
  return record;
}

}  // namespace mgiss
