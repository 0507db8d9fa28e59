#include "mgiss/verify.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mgiss/closure.hpp"
#include "mgiss/error.hpp"
#include "mgiss/graph_io.hpp"
#include "mgiss/graphgen.hpp"

namespace mgiss {

namespace {

std::string join(const NodeSet& set) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < set.size(); ++i) out << (i ? "," : "") << set[i];
  out << '}';
  return out.str();
}

std::optional<Counterexample> check(const Dag& dag, const NodeSet& nodes, const ClosureAlgorithm& algorithm,
                                    std::size_t lambda_bound) {
  NodeSet fast = algorithm(dag, nodes);
  NodeSet fixed_point = lsca_closure(dag, nodes);
  NodeSet lambda = lambda_nodes(dag, nodes, lambda_bound);
  if (fast == fixed_point && fixed_point == lambda) return std::nullopt;
  return Counterexample{dag, nodes, std::move(fast), std::move(fixed_point), std::move(lambda)};
}

}  // namespace

std::string Counterexample::describe() const {
  std::ostringstream out;
  out << "U = " << join(nodes) << "\nalgorithm = " << join(algorithm) << "\nclosure = " << join(closure)
      << "\nlambda = " << join(lambda) << "\ngraph:\n"
      << serialize_edge_list(dag);
  return out.str();
}

NodeSet c4_members(const Dag& dag, std::span<const NodeId> nodes) { return c4(dag, nodes).members; }

Dag dag_from_mask(std::size_t node_count, std::uint64_t mask) {
  std::vector<Edge> edges;
  std::size_t bit = 0;
  for (NodeId i = 0; i < node_count; ++i) {
    for (NodeId j = i + 1; j < node_count; ++j, ++bit) {
      if (mask >> bit & 1U) edges.emplace_back(i, j);
    }
  }
  return Dag::build(node_count, edges);
}

Dag random_dag(std::mt19937_64& rng, std::size_t max_nodes, double max_degree) {
  std::uniform_int_distribution<std::size_t> size(1, std::max<std::size_t>(1, max_nodes));
  const std::size_t n = size(rng);
  if (n == 1) return Dag::build(1, {});
  const double cap = std::min(max_degree, static_cast<double>(n - 1));
  std::uniform_real_distribution<double> degree(std::min(0.5, cap), cap);
  Dag ordered = gen_er_dag({n, degree(rng), rng()});
  std::vector<NodeId> relabel(n);
  std::iota(relabel.begin(), relabel.end(), NodeId{0});
  std::shuffle(relabel.begin(), relabel.end(), rng);
  std::vector<Edge> edges;
  for (const auto& [from, to] : ordered.edges()) edges.emplace_back(relabel[from], relabel[to]);
  return Dag::build(n, edges);
}

NodeSet random_subset(std::mt19937_64& rng, std::size_t node_count) {
  std::uniform_real_distribution<double> density(0.05, 0.5);
  std::bernoulli_distribution pick(density(rng));
  NodeSet out;
  for (NodeId v = 0; v < node_count; ++v) {
    if (pick(rng)) out.push_back(v);
  }
  return out;
}

VerifyReport verify_closures(const VerifyConfig& config, const ClosureAlgorithm& algorithm) {
  if (config.exhaustive_bound > kExhaustiveBound) {
    throw Error(ErrorCode::kGraphTooLarge, "exhaustive bound " + std::to_string(config.exhaustive_bound) +
                                               " exceeds " + std::to_string(kExhaustiveBound));
  }
  VerifyReport report;
  for (std::size_t n = 1; n <= config.exhaustive_bound; ++n) {
    const std::uint64_t masks = std::uint64_t{1} << (n * (n - 1) / 2);
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
      Dag dag = dag_from_mask(n, mask);
      ++report.exhaustive_graphs;
      for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << n); ++subset) {
        NodeSet nodes;
        for (NodeId v = 0; v < n; ++v) {
          if (subset >> v & 1U) nodes.push_back(v);
        }
        ++report.exhaustive_cases;
        if (auto bad = check(dag, nodes, algorithm, n)) {
          report.counterexample = std::move(bad);
          return report;
        }
      }
    }
  }
  for (std::size_t i = 0; i < config.random_samples; ++i) {
    std::mt19937_64 rng(config.seed + i);
    Dag dag = random_dag(rng, config.random_max_nodes);
    NodeSet nodes = random_subset(rng, dag.node_count());
    ++report.random_graphs;
    ++report.random_cases;
    if (auto bad = check(dag, nodes, algorithm, config.random_max_nodes)) {
      report.counterexample = std::move(bad);
      return report;
    }
  }
  return report;
}

}  // namespace mgiss
