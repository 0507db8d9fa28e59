#include <doctest.h>

#include <random>

#include "mgiss/dag.hpp"
#include "mgiss/error.hpp"
#include "mgiss/fixtures.hpp"
#include "mgiss/verify.hpp"
#include "support/oracles.hpp"

using namespace mgiss;

namespace {

ErrorCode build_error(std::size_t n, std::vector<Edge> edges) {
  try {
    Dag::build(n, edges);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kParseError;
}

}  // namespace

TEST_CASE("build rejects cycles, duplicates, self loops and bad ids") {
  CHECK(build_error(2, {{0, 1}, {1, 0}}) == ErrorCode::kCycleDetected);
  CHECK(build_error(3, {{0, 1}, {1, 2}, {2, 0}}) == ErrorCode::kCycleDetected);
  CHECK(build_error(2, {{0, 1}, {0, 1}}) == ErrorCode::kDuplicateEdge);
  CHECK(build_error(2, {{1, 1}}) == ErrorCode::kSelfLoop);
  CHECK(build_error(2, {{0, 2}}) == ErrorCode::kNodeOutOfRange);
}

TEST_CASE("adjacency is sorted both ways") {
  const std::vector<Edge> edges{{2, 3}, {0, 3}, {1, 3}, {0, 2}};
  Dag dag = Dag::build(4, edges);
  CHECK(std::vector<NodeId>(dag.parents(3).begin(), dag.parents(3).end()) == std::vector<NodeId>{0, 1, 2});
  CHECK(std::vector<NodeId>(dag.children(0).begin(), dag.children(0).end()) == std::vector<NodeId>{2, 3});
  CHECK(dag.edge_count() == 4);
  CHECK(dag.has_edge(0, 2));
  CHECK_FALSE(dag.has_edge(2, 0));
  CHECK(dag.label(2) == "2");
  CHECK(dag.find("3") == NodeId{3});
  CHECK_FALSE(dag.find("x").has_value());
}

TEST_CASE("topological order breaks ties by id") {
  CHECK(topo_order(fixtures::chain(3)) == std::vector<NodeId>{0, 1, 2});
  CHECK(topo_order(fixtures::diamond()) == std::vector<NodeId>{0, 1, 2, 3});
  CHECK(topo_order(Dag::build(3, {})) == std::vector<NodeId>{0, 1, 2});
  const std::vector<Edge> edges{{2, 0}, {1, 0}};
  CHECK(topo_order(Dag::build(3, edges)) == std::vector<NodeId>{1, 2, 0});
}

TEST_CASE("ancestors and descendants are reflexive") {
  Dag chain = fixtures::chain(3);
  CHECK(ancestors(chain, 2) == NodeSet{0, 1, 2});
  CHECK(descendants(chain, 1) == NodeSet{1, 2});
  CHECK(proper_ancestors(chain, 2) == NodeSet{0, 1});
  CHECK(ancestors(Dag::build(3, {}), 0) == NodeSet{0});
  CHECK(reaches(chain, 1, 1));
  CHECK_FALSE(reaches(chain, 2, 0));
}

TEST_CASE("lca on the two worked graphs and the diamond") {
  Dag b = fixtures::lca_example();
  Dag c = fixtures::closure_example();
  CHECK(lca(b, *b.find("A1"), *b.find("A2")) == NodeSet{*b.find("X1")});
  CHECK(lca(c, *c.find("A1"), *c.find("A2")) == NodeSet{*c.find("A1")});
  Dag d = fixtures::diamond();
  CHECK(oracle::lca(d, 1, 2) == NodeSet{0});
  CHECK(lca(d, 1, 2) == NodeSet{0});
  CHECK(lca(Dag::build(2, {}), 0, 1).empty());
}

TEST_CASE("sca examples") {
  Dag d = fixtures::diamond();
  CHECK(oracle::sca(d, 1, 2) == NodeSet{0});
  CHECK(sca(d, 1, 2) == NodeSet{0});

  // On a chain the only path from 0 to 2 runs through 1.
  Dag chain = fixtures::chain(3);
  CHECK(oracle::sca(chain, 1, 2).empty());
  CHECK(sca(chain, 1, 2).empty());

  const std::vector<Edge> edges{{0, 2}, {1, 2}, {0, 3}, {1, 3}};
  Dag two_roots = Dag::build(4, edges);
  CHECK(oracle::sca(two_roots, 2, 3) == NodeSet{0, 1});
  CHECK(sca(two_roots, 2, 3) == NodeSet{0, 1});
}

TEST_CASE("lsca_pair and lsca_set examples") {
  Dag d = fixtures::diamond();
  CHECK(lsca_pair(d, 1, 2) == NodeSet{0});

  const std::vector<Edge> edges{{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 4}};
  Dag g = Dag::build(5, edges);
  CHECK(oracle::sca(g, 3, 4) == NodeSet{0, 1});
  CHECK(oracle::lsca_pair(g, 3, 4) == NodeSet{1});
  CHECK(lsca_pair(g, 3, 4) == NodeSet{1});
  CHECK(lsca_pair(Dag::build(2, {}), 0, 1).empty());

  Dag c = fixtures::closure_example();
  const NodeSet u = make_set({*c.find("A1"), *c.find("A2")});
  CHECK(lsca_set(c, u) == NodeSet{*c.find("X1")});
  const NodeId single[] = {1};
  CHECK(lsca_set(d, single).empty());
  const NodeId pair[] = {1, 2};
  CHECK(lsca_set(d, pair) == NodeSet{0});
}

TEST_CASE("set queries match path enumeration on every DAG with at most 5 nodes") {
  // Six nodes would be 32768 graphs; the acceptance run and verify cover that size.
  for (std::size_t n = 1; n <= 5; ++n) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * (n - 1) / 2)); ++mask) {
      Dag dag = dag_from_mask(n, mask);
      REQUIRE(oracle::is_topological(dag, topo_order(dag)));
      for (NodeId x = 0; x < n; ++x) {
        REQUIRE(ancestors(dag, x) == oracle::ancestors(dag, x));
        REQUIRE(descendants(dag, x) == oracle::descendants(dag, x));
        for (NodeId y = 0; y < n; ++y) {
          REQUIRE(lca(dag, x, y) == oracle::lca(dag, x, y));
          if (x == y) continue;
          REQUIRE(sca(dag, x, y) == oracle::sca(dag, x, y));
          REQUIRE(lsca_pair(dag, x, y) == oracle::lsca_pair(dag, x, y));
        }
      }
    }
  }
}

TEST_CASE("order properties on shuffled random DAGs") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    Dag dag = random_dag(rng, 12);
    REQUIRE(oracle::is_topological(dag, topo_order(dag)));
    auto counts = proper_ancestor_counts(dag);
    for (NodeId v = 0; v < dag.node_count(); ++v) {
      REQUIRE(counts[v] == proper_ancestors(dag, v).size());
      for (NodeId w = 0; w < dag.node_count(); ++w) {
        if (v == w) continue;
        auto ca = oracle::common_ancestors(dag, v, w);
        auto l = lca(dag, v, w);
        auto s = sca(dag, v, w);
        auto ls = lsca_pair(dag, v, w);
        for (NodeId a : l) {
          REQUIRE(set_contains(ca, a));
          for (NodeId b : l) REQUIRE((a == b || !reaches(dag, a, b)));
        }
        for (NodeId a : s) REQUIRE(set_contains(ca, a));
        for (NodeId a : ls) {
          REQUIRE(set_contains(s, a));
          for (NodeId b : s) REQUIRE((a == b || !reaches(dag, a, b)));
        }
      }
    }
  }
}

TEST_CASE("without_parents keeps labels and drops incoming edges") {
  Dag c = fixtures::closure_example();
  Dag cut = c.without_parents(3);
  CHECK(cut.parents(3).empty());
  CHECK(cut.labels() == c.labels());
  CHECK(cut.edge_count() == c.edge_count() - 3);
}

TEST_CASE("is_path accepts trivial paths") {
  Dag d = fixtures::diamond();
  CHECK(is_path(d, Path{{2}}));
  CHECK(is_path(d, Path{{0, 1, 3}}));
  CHECK_FALSE(is_path(d, Path{{0, 3}}));
  CHECK_FALSE(is_path(d, Path{}));
}
