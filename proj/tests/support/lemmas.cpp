#include "lemmas.hpp"

#include <sstream>

#include "mgiss/closure.hpp"
#include "mgiss/witness.hpp"
#include "oracles.hpp"
#include "random_model.hpp"

namespace testing_support {

using mgiss::NodeId;
using mgiss::Value;

namespace {

std::string where(const char* what, NodeId a, NodeId b, NodeId c = 0) {
  std::ostringstream out;
  out << what << " (" << a << ", " << b << ", " << c << ")";
  return out.str();
}

}  // namespace

void blocking_case(std::mt19937_64& rng, LemmaTally& tally) {
  const mgiss::Scm scm = random_scm(rng);
  ++tally.cases;
  const std::size_t n = scm.node_count();
  for (NodeId x = 0; x < n; ++x) {
    for (Value v = 0; v < scm.range_size(x); ++v) {
      const mgiss::Scm post = mgiss::apply(scm, mgiss::AtomicIntervention{x, v});
      mgiss::for_each_unit(scm, [&](const mgiss::Unit& unit, double) {
        const auto intervened = post.evaluate(unit).values;
        for (NodeId y = 0; y < n; ++y) {
          ++tally.checks;
          const Value lib = mgiss::blocked_unrolled(scm, y, x, v, unit);
          const Value ref = oracle::blocked(scm, y, x, v, unit);
          if (lib != intervened[y] || ref != intervened[y]) tally.fail(where("blocking x,y,v", x, y, v));
        }
      });
    }
  }
}

void conditional_case(std::mt19937_64& rng, LemmaTally& tally) {
  const mgiss::Scm scm = random_scm(rng);
  ++tally.cases;
  const auto x = std::uniform_int_distribution<NodeId>(0, static_cast<NodeId>(scm.node_count() - 1))(rng);
  auto policy = random_policy(rng, scm, x, random_conditioning_set(rng, scm.dag(), x));
  const mgiss::Scm post = mgiss::apply(scm, policy);
  mgiss::for_each_unit(scm, [&](const mgiss::Unit& unit, double) {
    // Z avoids De(x), so its realized values are the observational ones.
    const auto observed = scm.evaluate(unit).values;
    std::size_t row = 0;
    for (NodeId z : policy.conditioning) {
      row = row * static_cast<std::size_t>(scm.range_size(z)) + static_cast<std::size_t>(observed[z]);
    }
    const Value chosen = policy.policy[row];
    const auto atomic = mgiss::apply(scm, mgiss::AtomicIntervention{x, chosen}).evaluate(unit).values;
    const auto conditional = post.evaluate(unit).values;
    for (NodeId y = 0; y < scm.node_count(); ++y) {
      ++tally.checks;
      if (atomic[y] != conditional[y]) tally.fail(where("conditional x,y", x, y));
    }
  });
}

void chaining_case(std::mt19937_64& rng, LemmaTally& tally) {
  const mgiss::Scm scm = random_scm(rng);
  ++tally.cases;
  const mgiss::Dag& dag = scm.dag();
  const std::size_t n = scm.node_count();
  for (NodeId b = 0; b < n; ++b) {
    for (NodeId y = 0; y < n; ++y) {
      for (NodeId z = 0; z < n; ++z) {
        if (!oracle::all_paths_through(dag, b, y, z)) continue;
        mgiss::for_each_unit(scm, [&](const mgiss::Unit& unit, double) {
          for (Value v = 0; v < scm.range_size(b); ++v) {
            ++tally.checks;
            const Value direct = mgiss::blocked_unrolled(scm, y, b, v, unit);
            const Value via = mgiss::blocked_unrolled(scm, z, b, v, unit);
            if (direct != mgiss::blocked_unrolled(scm, y, z, via, unit)) tally.fail(where("chaining b,y,z", b, y, z));
          }
        });
      }
    }
  }
}

void connector_case(std::mt19937_64& rng, LemmaTally& tally) {
  const mgiss::Scm scm = random_scm(rng);
  ++tally.cases;
  const mgiss::Dag& dag = scm.dag();
  for (NodeId y = 0; y < scm.node_count(); ++y) {
    if (dag.parents(y).empty()) continue;
    const auto result = mgiss::c4(dag, dag.parents(y));
    for (NodeId b : mgiss::proper_ancestors(dag, y)) {
      if (mgiss::set_contains(result.members, b)) continue;
      ++tally.checks;
      const auto z = mgiss::connector_of(result, b);
      const auto expected = oracle::connectors(dag, result.members, b);
      if (!z || expected != mgiss::NodeSet{*z} || !oracle::all_paths_through(dag, b, y, *z)) {
        tally.fail(where("connector b,y", b, y));
        continue;
      }
      mgiss::for_each_unit(scm, [&](const mgiss::Unit& unit, double) {
        ++tally.checks;
        if (!mgiss::det_superior(scm, unit, *z, b, y)) tally.fail(where("dominance b,y,z", b, y, *z));
      });
    }
  }
}

void witness_case(std::mt19937_64& rng, LemmaTally& tally) {
  mgiss::Dag dag;
  std::vector<NodeId> targets;
  while (targets.empty()) {
    dag = random_small_dag(rng);
    for (NodeId v = 0; v < dag.node_count(); ++v) {
      if (!dag.parents(v).empty()) targets.push_back(v);
    }
  }
  ++tally.cases;
  const NodeId y = targets[std::uniform_int_distribution<std::size_t>(0, targets.size() - 1)(rng)];
  const auto members = mgiss::mgiss(dag, y);
  for (NodeId b : members) {
    const mgiss::Scm w = mgiss::minimality_witness(dag, y, b);
    const mgiss::Unit zero = mgiss::zero_unit(w);
    const Value best = mgiss::max_atomic_outcome(w, zero, b, y);
    for (NodeId x : members) {
      if (x == b) continue;
      ++tally.checks;
      if (mgiss::det_superior(w, zero, x, b, y) || mgiss::max_atomic_outcome(w, zero, x, y) >= best) {
        tally.fail(where("witness b,x,y", b, x, y));
      }
    }
  }
}

}  // namespace testing_support
