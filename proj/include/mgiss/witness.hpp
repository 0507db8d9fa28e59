#pragma once

#include "mgiss/closure.hpp"
#include "mgiss/scm.hpp"

namespace mgiss {

// Adversarial binary models certifying that a closure member cannot be dropped,
// or that a node off a path cannot dominate the path's source. Every
// non-reward variable is binary; the reward ranges over 0..3. "step" maps a
// strictly positive sum to 1 and anything else to 0.

/// Parent witness: Y = 2B + step(other parents) + N_Y, B = N_B (1 - step(Pa(B))),
/// every other node step(parents) + N. N_B is a fair coin, other noises are 0.
/// Throws kNotAParent unless `b` is a parent of `y`.
Scm witness_parent(const Dag& dag, NodeId y, NodeId b);

/// Λ witness: Y = 2 A1 A2 + step(other parents) + N_Y where A1, A2 end the two
/// paths from `b`. Path nodes copy their predecessor, OR-ed with noise gated by
/// their other parents. N_B and the path-node noises are fair coins; the rest are 0.
/// Throws kInvalidLambdaPaths when the paths are not a Λ-structure from `b`
/// onto two distinct parents of `y`.
Scm witness_lambda(const Dag& dag, NodeId y, NodeId b, const Path& path1, const Path& path2);

/// Path witness for a path w ⇢ A → y: Y = 2A + N_Y step(other parents), path
/// nodes copy their predecessor, w and off-path nodes are N step(parents).
/// All noises are fair coins. At the all-zero unit do(w = 1) gives Y = 2 and
/// interventions off the path give Y = 0. Throws kInvalidPath.
Scm witness_path(const Dag& dag, NodeId y, NodeId w, const Path& path);

/// witness_parent for parents of `y`, otherwise witness_lambda over a
/// Λ-structure from `b` onto Pa(y). `b` must lie in mgiss(dag, y).
Scm minimality_witness(const Dag& dag, NodeId y, NodeId b);

/// The all-zero unit.
Unit zero_unit(const Scm& scm);

}  // namespace mgiss
