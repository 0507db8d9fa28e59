#include <doctest.h>

#include <random>

#include "mgiss/error.hpp"
#include "mgiss/fixtures.hpp"
#include "mgiss/graph_io.hpp"
#include "mgiss/scm_io.hpp"
#include "support/random_model.hpp"

using namespace mgiss;

namespace {

template <typename Fn>
ErrorCode error_of(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidModel;
}

}  // namespace

TEST_CASE("round trip") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    Scm m = testing_support::random_scm(rng);
    const std::string text = serialize_scm_json(m);
    Scm back = parse_scm_json(text);
    REQUIRE(back == m);
    REQUIRE(serialize_scm_json(back) == text);
  }
  Scm x = xor_counterexample();
  CHECK(parse_scm_json(serialize_scm_json(x)) == x);
}

TEST_CASE("bundled model files parse and re-serialize byte for byte") {
  for (const char* name : {"xor.json", "diamond_witness.json", "eight_node.json", "seven_node.json"}) {
    const std::string text = read_file(std::string(MGISS_FIXTURES) + "/" + name);
    CHECK(serialize_scm_json(parse_scm_json(text)) == text);
  }
  CHECK(parse_scm_json(read_file(std::string(MGISS_FIXTURES) + "/xor.json")) == xor_counterexample());
}

TEST_CASE("schema errors") {
  const char* ok = R"({"nodes": [{"name": "A", "range": 2, "noise": [0.5, 0.5]},
                                 {"name": "B", "range": 2, "noise": [1.0]}],
                       "edges": [["A", "B"]],
                       "assignments": {"A": [0, 1], "B": [1, 0]}})";
  Scm m = parse_scm_json(ok);
  CHECK(m.node_count() == 2);
  CHECK(m.dag().has_edge(0, 1));

  try {
    parse_scm_json("{\"nodes\": [\n  {\"name\": }\n]}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK(error_of([] { parse_scm_json(R"({"edges": [], "assignments": {}})"); }) == ErrorCode::kParseError);
  CHECK(error_of([] {
          parse_scm_json(R"({"nodes": [{"name": "A", "range": 2, "noise": [1.0]}], "edges": [["A", "Q"]],
                             "assignments": {"A": [0]}})");
        }) == ErrorCode::kUnknownVariable);
  CHECK(error_of([] {
          parse_scm_json(R"({"nodes": [{"name": "A", "range": 2, "noise": [1.0]}], "edges": [],
                             "assignments": {}})");
        }) == ErrorCode::kParseError);
  CHECK(error_of([] {
          parse_scm_json(R"({"nodes": [{"name": "A", "range": 2, "noise": [0.7]}], "edges": [],
                             "assignments": {"A": [0]}})");
        }) == ErrorCode::kInvalidModel);
  CHECK(error_of([] {
          parse_scm_json(R"({"nodes": [{"name": "A", "range": 2, "noise": [1.0]},
                                       {"name": "A", "range": 2, "noise": [1.0]}],
                             "edges": [], "assignments": {"A": [0]}})");
        }) == ErrorCode::kParseError);
}

TEST_CASE("intervened models are not serialized") {
  Scm post = apply(xor_counterexample(), AtomicIntervention{0, 1});
  CHECK(error_of([&] { serialize_scm_json(post); }) == ErrorCode::kInvalidModel);
}
