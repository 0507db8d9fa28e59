#include "mgiss/fixtures.hpp"

#include "mgiss/error.hpp"
#include "mgiss/witness.hpp"

namespace mgiss::fixtures {

Dag diamond() {
  const std::vector<Edge> edges{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  return Dag::build(4, edges);
}

Dag chain(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  return Dag::build(n, edges);
}

Dag lca_example() {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}};
  return Dag::build(5, edges, {"X0", "X1", "A1", "A2", "Y"});
}

Dag closure_example() {
  const std::vector<Edge> edges{{0, 1}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}};
  return Dag::build(5, edges, {"Z", "X1", "A1", "A2", "Y"});
}

Scm diamond_witness() {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}};
  Dag dag = Dag::build(5, edges, {"R", "B", "A1", "A2", "Y"});
  return witness_lambda(dag, 4, 1, Path{{1, 2}}, Path{{1, 3}});
}

std::vector<std::string> graph_names() { return {"diamond", "chain", "lca-example", "closure-example"}; }

std::vector<std::string> scm_names() { return {"xor", "diamond-witness"}; }

Dag build_graph(const std::string& name) {
  if (name == "diamond") return diamond();
  if (name == "chain") return chain(3);
  if (name == "lca-example") return lca_example();
  if (name == "closure-example") return closure_example();
  throw Error(ErrorCode::kParseError, "unknown graph fixture '" + name + "'");
}

Scm build_scm(const std::string& name) {
  if (name == "xor") return xor_counterexample();
  if (name == "diamond-witness") return diamond_witness();
  throw Error(ErrorCode::kParseError, "unknown model fixture '" + name + "'");
}

}  // namespace mgiss::fixtures
