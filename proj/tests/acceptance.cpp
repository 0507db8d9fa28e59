// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero if
// any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "mgiss/bandit.hpp"
#include "mgiss/closure.hpp"
#include "mgiss/fixtures.hpp"
#include "mgiss/graph_io.hpp"
#include "mgiss/graphgen.hpp"
#include "mgiss/scm_io.hpp"
#include "mgiss/verify.hpp"
#include "support/lemmas.hpp"

using namespace mgiss;

namespace {

// Pinned thresholds.
constexpr double kEquivalenceSeconds = 300.0;
constexpr std::size_t kEquivalenceBound = 5;
constexpr std::size_t kEquivalenceSamples = 1000;
constexpr std::size_t kEquivalenceMaxNodes = 40;

constexpr std::size_t kGraphsPerCell = 1000;
constexpr double kReductionTolerance = 0.05;

constexpr int kLemmaCases = 10000;
constexpr double kLemmaSeconds = 600.0;

constexpr double kScalingLow = 1.8;
constexpr double kScalingHigh = 2.2;
constexpr int kScalingSeeds = 5;

constexpr int kBanditSeeds = 100;
constexpr std::uint64_t kBanditHorizon = 2000;
constexpr double kBanditSigmas = 2.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << (pass ? "PASS" : "FAIL") << "  " << id << " " << name << ": " << detail << std::endl;
}

std::string fixed(double x, int digits = 4) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << x;
  return out.str();
}

void triple_equivalence() {
  const auto start = Clock::now();
  VerifyConfig cfg;
  cfg.exhaustive_bound = kEquivalenceBound;
  cfg.random_samples = kEquivalenceSamples;
  cfg.random_max_nodes = kEquivalenceMaxNodes;
  cfg.seed = 0;
  const auto r = verify_closures(cfg);
  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << r.exhaustive_cases << " exhaustive cases on " << r.exhaustive_graphs << " graphs, " << r.random_cases
         << " random cases, " << fixed(elapsed, 1) << " s";
  if (!r.ok()) detail << "; counterexample:\n" << r.counterexample->describe();
  report(1, "triple equivalence", r.ok() && elapsed < kEquivalenceSeconds, detail.str());
}

void reduction_means() {
  struct Cell {
    std::size_t n;
    double degree;
    double expected;
  };
  const std::array<Cell, 8> cells{{{500, 2, 0.17},
                                   {500, 5, 0.29},
                                   {500, 8, 0.62},
                                   {500, 11, 0.77},
                                   {20, 5, 0.70},
                                   {100, 5, 0.47},
                                   {300, 5, 0.35},
                                   {500, 5, 0.29}}};
  bool pass = true;
  std::ostringstream detail;
  for (const auto& c : cells) {
    double sum = 0.0;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < kGraphsPerCell; ++i) {
      Dag dag = gen_er_dag({c.n, c.degree, i});
      if (auto y = select_target(dag)) {
        sum += reduction_fraction(dag, *y).fraction;
        ++kept;
      }
    }
    const double mean = kept ? sum / static_cast<double>(kept) : 0.0;
    const bool ok = std::abs(mean - c.expected) <= kReductionTolerance;
    pass = pass && ok;
    detail << "(n=" << c.n << ",d=" << c.degree << ") " << fixed(mean, 3) << " vs " << fixed(c.expected, 2)
           << (ok ? "" : " OUT") << "; ";
  }
  report(2, "reduction means", pass, detail.str());
}

void xor_values() {
  const Scm x = xor_counterexample();
  const double z1 = post_expectation(x, 3, AtomicIntervention{0, 1});
  const double a0 = post_expectation(x, 3, AtomicIntervention{2, 0});
  const double a1 = post_expectation(x, 3, AtomicIntervention{2, 1});
  const double opt = optimal_node_value(x, 3, 2);
  const bool pass = z1 == 1.0 && a0 == 0.5 && a1 == 0.5 && opt == 1.0;
  report(3, "xor values", pass,
         "E[Y|do(Z=1)]=" + fixed(z1, 17) + " E[Y|do(A=0)]=" + fixed(a0, 17) + " E[Y|do(A=1)]=" + fixed(a1, 17) +
             " optimal(A)=" + fixed(opt, 17));
}

void lemma_suites() {
  using Case = std::function<void(std::mt19937_64&, testing_support::LemmaTally&)>;
  const std::array<std::pair<const char*, Case>, 5> suites{{{"blocking", testing_support::blocking_case},
                                                            {"conditional", testing_support::conditional_case},
                                                            {"chaining", testing_support::chaining_case},
                                                            {"connector", testing_support::connector_case},
                                                            {"witness", testing_support::witness_case}}};
  const auto start = Clock::now();
  bool pass = true;
  std::ostringstream detail;
  std::uint64_t seed = 1000;
  for (const auto& [name, one_case] : suites) {
    std::mt19937_64 rng(seed++);
    testing_support::LemmaTally tally;
    for (int i = 0; i < kLemmaCases; ++i) one_case(rng, tally);
    pass = pass && tally.violations == 0 && tally.cases == kLemmaCases;
    detail << name << " " << tally.cases << " cases/" << tally.checks << " checks/" << tally.violations
           << " violations";
    if (tally.violations) detail << " [" << tally.first_violation << "]";
    detail << "; ";
  }
  const double elapsed = seconds_since(start);
  detail << fixed(elapsed, 1) << " s";
  report(4, "lemma suites", pass && elapsed < kLemmaSeconds, detail.str());
}

void scaling() {
  const std::array<std::size_t, 3> sizes{10000, 20000, 40000};
  std::array<double, 3> steps{};
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    double total = 0.0;
    for (int s = 0; s < kScalingSeeds; ++s) {
      Dag dag = gen_er_dag({sizes[i], 5.0, static_cast<std::uint64_t>(s)});
      auto y = select_target(dag);
      total += static_cast<double>(c4(dag, y ? dag.parents(*y) : std::span<const NodeId>{}).steps);
    }
    steps[i] = total / kScalingSeeds;
  }
  const double r1 = steps[1] / steps[0];
  const double r2 = steps[2] / steps[1];
  const bool pass = r1 >= kScalingLow && r1 <= kScalingHigh && r2 >= kScalingLow && r2 <= kScalingHigh;
  report(5, "linear steps", pass,
         "mean steps " + fixed(steps[0], 0) + ", " + fixed(steps[1], 0) + ", " + fixed(steps[2], 0) + "; ratios " +
             fixed(r1, 3) + ", " + fixed(r2, 3));
}

void bandit_restriction() {
  const std::string dir = MGISS_FIXTURES;
  const std::array<std::pair<std::string, Scm>, 2> models{
      {{"diamond witness", fixtures::diamond_witness()},
       {"eight-node fixture", parse_scm_json(read_file(dir + "/eight_node.json"))}}};
  bool pass = true;
  std::ostringstream detail;
  for (const auto& [name, scm] : models) {
    const NodeId y = *scm.dag().find("Y");
    const auto small = mgiss::mgiss(scm.dag(), y);
    const auto all = proper_ancestors(scm.dag(), y);
    const auto vs = arm_values(scm, y, small);
    const auto va = arm_values(scm, y, all);
    double sum_small = 0.0, sum_all = 0.0, sum_d = 0.0, sq_d = 0.0;
    for (int s = 0; s < kBanditSeeds; ++s) {
      BanditConfig cfg{kBanditHorizon, static_cast<std::uint64_t>(s)};
      const double rs = oracle_regret(run_cond_int_ucb(scm, y, small, cfg), small, vs).back();
      const double ra = oracle_regret(run_cond_int_ucb(scm, y, all, cfg), all, va).back();
      sum_small += rs;
      sum_all += ra;
      sum_d += ra - rs;
      sq_d += (ra - rs) * (ra - rs);
    }
    const double k = kBanditSeeds;
    const double mean_d = sum_d / k;
    const double se = std::sqrt((sq_d - k * mean_d * mean_d) / (k - 1.0) / k);
    const bool ok = sum_small / k < sum_all / k && mean_d > kBanditSigmas * se;
    pass = pass && ok;
    detail << name << ": mgiss " << fixed(sum_small / k, 2) << " (" << small.size() << " arms) vs all "
           << fixed(sum_all / k, 2) << " (" << all.size() << " arms), diff " << fixed(mean_d, 2) << " se "
           << fixed(se, 2) << "; ";
  }
  report(6, "bandit restriction", pass, detail.str());
}

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(MGISS_CLI) + " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void determinism() {
  const std::string dir = MGISS_FIXTURES;
  const auto tmp = std::filesystem::temp_directory_path() / "mgiss_acceptance";
  std::filesystem::create_directories(tmp);
  const std::string out_file = (tmp / "out.txt").string();
  const std::array<std::string, 12> commands{
      "mgiss --graph " + dir + "/closure-example.edges --target Y",
      "mgiss --graph " + dir + "/diamond.edges --format text",
      "verify --n 4 --count 100 --seed 3",
      "verify --n 3 --count 0 --corrupt-c4",
      "reduce --n 50 100 --degree 2 5 --count 100 --seed 11 --jobs 4",
      "bandit --graph " + dir + "/eight_node.json --target Y --arms all --count 20 --horizon 500 --jobs 4",
      "bandit --graph " + dir + "/diamond_witness.json --target Y --count 3 --horizon 300 --format history",
      "gen --n 200 --degree 4 --seed 8",
      "gen --n 20 --degree 3 --seed 8 --format dot",
      "gen --kind xor",
      "gen --kind closure-example",
      "reduce --n 30 --degree 4 --count 50 --out " + out_file,
  };
  bool pass = true;
  std::size_t identical = 0;
  std::ostringstream detail;
  for (const auto& cmd : commands) {
    auto read_out = [&](const CliRun& r) {
      return cmd.find("--out") == std::string::npos ? r.out : read_file(out_file);
    };
    const CliRun a = run_cli(cmd);
    const std::string first = read_out(a);
    const CliRun b = run_cli(cmd);
    const std::string second = read_out(b);
    const bool same = a.code == b.code && first == second && !first.empty();
    identical += same;
    if (!same) {
      pass = false;
      detail << "differs: " << cmd << "; ";
    }
  }
  std::filesystem::remove_all(tmp);
  detail << identical << "/" << commands.size() << " commands byte-identical across two runs";
  report(7, "cli determinism", pass, detail.str());
}

}  // namespace

int main() {
  const auto start = Clock::now();
  triple_equivalence();
  reduction_means();
  xor_values();
  lemma_suites();
  scaling();
  bandit_restriction();
  determinism();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << " in "
            << fixed(seconds_since(start), 1) << " s" << std::endl;
  return failures == 0 ? 0 : 1;
}
