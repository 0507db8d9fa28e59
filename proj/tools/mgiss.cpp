// mgiss command-line tool: mgiss, verify, reduce, bandit, gen.

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "mgiss/bandit.hpp"
#include "mgiss/closure.hpp"
#include "mgiss/error.hpp"
#include "mgiss/fixtures.hpp"
#include "mgiss/graph_io.hpp"
#include "mgiss/graphgen.hpp"
#include "mgiss/scm_io.hpp"
#include "mgiss/verify.hpp"

namespace {

using namespace mgiss;

enum Exit : int { kOk = 0, kVerifyFailed = 1, kInputError = 2, kTargetError = 3, kBudgetError = 4 };

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTargetNotFound:
    case ErrorCode::kNoParents:
    case ErrorCode::kNotAParent:
      return kTargetError;
    case ErrorCode::kEnumerationBudgetExceeded:
    case ErrorCode::kGraphTooLarge:
      return kBudgetError;
    default:
      return kInputError;
  }
}

// Shortest text that reads back to the same double.
std::string fmt(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  auto parent = std::filesystem::path(out_path).parent_path();
  if (!parent.empty() && !std::filesystem::is_directory(parent)) {
    throw Error(ErrorCode::kParseError, "output directory '" + parent.string() + "' does not exist");
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kParseError, "cannot write '" + out_path + "'");
  out << text;
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Results are written
// by index, so the merge order never depends on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn fn) {
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

NodeId resolve_target(const Dag& dag, const std::string& name) {
  if (name == "auto") {
    auto t = select_target(dag);
    if (!t) throw Error(ErrorCode::kNoParents, "no node has more than one parent");
    return *t;
  }
  auto t = dag.find(name);
  if (!t) throw Error(ErrorCode::kTargetNotFound, "no node labelled '" + name + "'");
  if (dag.parents(*t).empty()) throw Error(ErrorCode::kNoParents, "'" + name + "' has no parents");
  return *t;
}

struct Options {
  std::string graph;
  std::string input_format = "auto";
  std::string target = "auto";
  std::string format;
  std::string out;
  std::string kind = "er";
  std::string arms = "mgiss";
  std::vector<std::size_t> n;
  std::vector<double> degree;
  std::size_t count = 0;
  std::size_t max_nodes = 40;
  std::uint64_t seed = 0;
  std::uint64_t horizon = 1000;
  unsigned jobs = 1;
  bool corrupt_c4 = false;
};

int cmd_mgiss(const Options& o) {
  Dag dag = load_graph(o.graph, parse_graph_format(o.input_format));
  NodeId y = resolve_target(dag, o.target);
  auto result = c4(dag, dag.parents(y));
  std::ostringstream out;
  if (o.format == "text") {
    out << "target " << dag.label(y) << "\nmembers";
    for (NodeId v : result.members) out << ' ' << dag.label(v);
    out << '\n';
    for (NodeId v = 0; v < dag.node_count(); ++v) {
      out << "connector " << dag.label(v) << ' ' << (result.connector[v] ? dag.label(*result.connector[v]) : "-")
          << '\n';
    }
  } else if (o.format == "json" || o.format.empty()) {
    nlohmann::ordered_json doc;
    doc["target"] = dag.label(y);
    doc["members"] = nlohmann::json::array();
    for (NodeId v : result.members) doc["members"].push_back(dag.label(v));
    auto& connectors = doc["connectors"] = nlohmann::ordered_json::object();
    for (NodeId v = 0; v < dag.node_count(); ++v) {
      if (result.connector[v]) {
        connectors[dag.label(v)] = dag.label(*result.connector[v]);
      } else {
        connectors[dag.label(v)] = nullptr;
      }
    }
    out << doc.dump(2) << '\n';
  } else {
    throw Error(ErrorCode::kParseError, "mgiss output format must be json or text");
  }
  emit(o.out, out.str());
  return kOk;
}

int cmd_verify(const Options& o) {
  VerifyConfig cfg;
  cfg.exhaustive_bound = o.n.empty() ? 5 : o.n.front();
  cfg.random_samples = o.count;
  cfg.random_max_nodes = o.max_nodes;
  cfg.seed = o.seed;
  ClosureAlgorithm algorithm = c4_members;
  if (o.corrupt_c4) {
    // Self-test: forget every connector outside U.
    algorithm = [](const Dag&, std::span<const NodeId> nodes) { return make_set({nodes.begin(), nodes.end()}); };
  }
  auto report = verify_closures(cfg, algorithm);
  std::ostringstream out;
  out << "exhaustive bound " << cfg.exhaustive_bound << ": " << report.exhaustive_graphs << " graphs, "
      << report.exhaustive_cases << " cases\n";
  out << "random max " << cfg.random_max_nodes << " nodes, seed " << cfg.seed << ": " << report.random_graphs
      << " graphs, " << report.random_cases << " cases\n";
  if (report.ok()) {
    out << "agree\n";
  } else {
    out << "mismatch\n" << report.counterexample->describe();
  }
  emit(o.out, out.str());
  return report.ok() ? kOk : kVerifyFailed;
}

int cmd_reduce(const Options& o) {
  if (o.n.empty() || o.degree.empty()) throw Error(ErrorCode::kParseError, "reduce needs --n and --degree");
  for (std::size_t n : o.n) {
    for (double d : o.degree) {
      if (n < 2 || !(d > 0.0) || d > static_cast<double>(n - 1)) {
        throw Error(ErrorCode::kInvalidDegree, "degree " + fmt(d) + " with " + std::to_string(n) + " nodes");
      }
    }
  }
  std::ostringstream out;
  out << "graph_id,n,expected_degree,target,n_proper_ancestors,mgiss_size,fraction\n";
  for (std::size_t n : o.n) {
    for (double d : o.degree) {
      std::vector<std::optional<ReductionRecord>> rows(o.count);
      parallel_for(o.count, o.jobs, [&](std::size_t i) {
        Dag dag = gen_er_dag({n, d, o.seed + i});
        if (auto y = select_target(dag)) rows[i] = reduction_fraction(dag, *y);
      });
      double sum = 0.0;
      std::size_t kept = 0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i]) continue;
        const auto& r = *rows[i];
        out << i << ',' << n << ',' << fmt(d) << ',' << r.target << ',' << r.ancestor_count << ',' << r.mgiss_size
            << ',' << fmt(r.fraction) << '\n';
        sum += r.fraction;
        ++kept;
      }
      out << "mean," << n << ',' << fmt(d) << ",,,," << (kept ? fmt(sum / static_cast<double>(kept)) : "") << '\n';
    }
  }
  emit(o.out, out.str());
  return kOk;
}

int cmd_bandit(const Options& o) {
  Scm scm = parse_scm_json(read_file(o.graph));
  const Dag& dag = scm.dag();
  auto found = dag.find(o.target);
  if (!found) throw Error(ErrorCode::kTargetNotFound, "no node labelled '" + o.target + "'");
  const NodeId y = *found;
  if (dag.parents(y).empty()) throw Error(ErrorCode::kNoParents, "'" + o.target + "' has no parents");

  NodeSet arms;
  if (o.arms == "mgiss") {
    arms = mgiss::mgiss(dag, y);
  } else if (o.arms == "all") {
    arms = proper_ancestors(dag, y);
  } else {
    throw Error(ErrorCode::kParseError, "--arms must be mgiss or all");
  }
  if (o.count == 0) throw Error(ErrorCode::kParseError, "--count must be positive");
  const auto values = arm_values(scm, y, arms);

  std::vector<BanditHistory> runs(o.count);
  parallel_for(o.count, o.jobs, [&](std::size_t r) {
    BanditConfig cfg;
    cfg.horizon = o.horizon;
    cfg.seed = o.seed + r;
    runs[r] = run_cond_int_ucb(scm, y, arms, cfg);
    runs[r].cumulative_regret = oracle_regret(runs[r], arms, values);
  });

  std::ostringstream out;
  if (o.format == "history") {
    // Replications follow each other in seed order; `round` restarts at 1.
    out << "round,node,context_id,value,reward,cum_regret_oracle\n";
    for (const auto& h : runs) {
      for (std::size_t t = 0; t < h.rounds.size(); ++t) {
        const auto& r = h.rounds[t];
        out << r.round << ',' << dag.label(r.node) << ',' << r.context_id << ',' << r.value << ',' << r.reward << ','
            << fmt(h.cumulative_regret[t]) << '\n';
      }
    }
  } else if (o.format == "aggregate" || o.format.empty()) {
    out << "round,mean_regret,std_regret\n";
    const double k = static_cast<double>(runs.size());
    for (std::size_t t = 0; t < o.horizon; ++t) {
      double mean = 0.0;
      for (const auto& h : runs) mean += h.cumulative_regret[t];
      mean /= k;
      double ss = 0.0;
      for (const auto& h : runs) ss += (h.cumulative_regret[t] - mean) * (h.cumulative_regret[t] - mean);
      const double sd = runs.size() > 1 ? std::sqrt(ss / (k - 1.0)) : 0.0;
      out << t + 1 << ',' << fmt(mean) << ',' << fmt(sd) << '\n';
    }
  } else {
    throw Error(ErrorCode::kParseError, "bandit output format must be aggregate or history");
  }
  emit(o.out, out.str());
  return kOk;
}

int cmd_gen(const Options& o) {
  std::string text;
  const auto scms = fixtures::scm_names();
  if (std::find(scms.begin(), scms.end(), o.kind) != scms.end()) {
    if (!o.format.empty() && o.format != "json") throw Error(ErrorCode::kParseError, "models are written as json");
    text = serialize_scm_json(fixtures::build_scm(o.kind));
  } else {
    Dag dag;
    if (o.kind == "er") {
      if (o.n.size() != 1 || o.degree.size() != 1) throw Error(ErrorCode::kParseError, "gen er needs one --n and one --degree");
      dag = gen_er_dag({o.n.front(), o.degree.front(), o.seed});
    } else {
      dag = fixtures::build_graph(o.kind);
    }
    if (o.format == "dot") {
      text = serialize_dot(dag);
    } else if (o.format == "edges" || o.format.empty()) {
      text = serialize_edge_list(dag);
    } else {
      throw Error(ErrorCode::kParseError, "graph output format must be edges or dot");
    }
  }
  emit(o.out, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal intervention sets for conditional causal bandits"};
  app.require_subcommand(1);
  Options o;

  auto* sub_mgiss = app.add_subcommand("mgiss", "mGISS members and connectors for a target");
  sub_mgiss->add_option("--graph", o.graph, "graph file")->required();
  sub_mgiss->add_option("--input-format", o.input_format, "auto|edges|dot|bif");
  sub_mgiss->add_option("--target", o.target, "target label, or auto");
  sub_mgiss->add_option("--format", o.format, "json|text (default json)");
  sub_mgiss->add_option("--out", o.out, "output file (default stdout)");

  auto* sub_verify = app.add_subcommand("verify", "cross-check c4 against the closure and the Λ oracle");
  o.count = 1000;
  sub_verify->add_option("--n", o.n, "exhaustive node bound (default 5, at most 6)")->expected(1);
  sub_verify->add_option("--count", o.count, "random graphs (default 1000)");
  sub_verify->add_option("--max-nodes", o.max_nodes, "largest random graph (default 40)");
  sub_verify->add_option("--seed", o.seed, "seed of the first random graph (default 0)");
  sub_verify->add_option("--out", o.out, "output file (default stdout)");
  sub_verify->add_flag("--corrupt-c4", o.corrupt_c4, "harness self-test")->group("");

  auto* sub_reduce = app.add_subcommand("reduce", "mGISS size over proper ancestors on random DAGs");
  sub_reduce->add_option("--n", o.n, "node counts")->required();
  sub_reduce->add_option("--degree", o.degree, "expected degrees")->required();
  sub_reduce->add_option("--count", o.count, "graphs per cell (default 1000)");
  sub_reduce->add_option("--seed", o.seed, "graph i uses seed + i (default 0)");
  sub_reduce->add_option("--jobs", o.jobs, "worker threads (default 1)");
  sub_reduce->add_option("--out", o.out, "output file (default stdout)");

  auto* sub_bandit = app.add_subcommand("bandit", "CondIntUCB regret over replications");
  sub_bandit->add_option("--graph", o.graph, "SCM json file")->required();
  sub_bandit->add_option("--target", o.target, "reward node label")->required();
  sub_bandit->add_option("--horizon", o.horizon, "rounds per replication (default 1000)");
  sub_bandit->add_option("--count", o.count, "replications (default 100)");
  sub_bandit->add_option("--seed", o.seed, "replication r uses seed + r (default 0)");
  sub_bandit->add_option("--arms", o.arms, "mgiss|all (default mgiss)");
  sub_bandit->add_option("--jobs", o.jobs, "worker threads (default 1)");
  sub_bandit->add_option("--format", o.format, "aggregate|history (default aggregate)");
  sub_bandit->add_option("--out", o.out, "output file (default stdout)");

  auto* sub_gen = app.add_subcommand("gen", "random graph or bundled fixture");
  sub_gen->add_option("--kind", o.kind, "er, diamond, chain, lca-example, closure-example, xor, diamond-witness");
  sub_gen->add_option("--n", o.n, "node count for er")->expected(1);
  sub_gen->add_option("--degree", o.degree, "expected degree for er")->expected(1);
  sub_gen->add_option("--seed", o.seed, "generator seed (default 0)");
  sub_gen->add_option("--format", o.format, "edges|dot for graphs (default edges), json for models");
  sub_gen->add_option("--out", o.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (sub_mgiss->parsed()) return cmd_mgiss(o);
    if (sub_verify->parsed()) return cmd_verify(o);
    if (sub_reduce->parsed()) {
      if (sub_reduce->count("--count") == 0) o.count = 1000;
      return cmd_reduce(o);
    }
    if (sub_bandit->parsed()) {
      if (sub_bandit->count("--count") == 0) o.count = 100;
      return cmd_bandit(o);
    }
    return cmd_gen(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}
