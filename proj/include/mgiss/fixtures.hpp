#pragma once

#include <string>
#include <vector>

#include "mgiss/dag.hpp"
#include "mgiss/scm.hpp"

namespace mgiss::fixtures {

/// 0 -> 1, 0 -> 2, 1 -> 3, 2 -> 3.
Dag diamond();

/// 0 -> 1 -> ... -> n-1.
Dag chain(std::size_t n);

/// X0 -> X1, X1 -> A1, X1 -> A2, A1 -> Y, A2 -> Y.
Dag lca_example();

/// Z -> X1, Z -> A2, X1 -> A1, X1 -> A2, A1 -> A2, A1 -> Y, A2 -> Y.
/// One LSCA round from {A1, A2} gives {X1, A1, A2}, the closure adds Z.
Dag closure_example();

/// Λ witness on R -> B, B -> A1, B -> A2, A1 -> Y, A2 -> Y with apex B.
/// R is a proper ancestor of Y outside mGISS, so the two arm sets differ.
Scm diamond_witness();

/// Names accepted by build_graph / build_scm.
std::vector<std::string> graph_names();
std::vector<std::string> scm_names();

/// Throws Error(kParseError) for unknown names.
Dag build_graph(const std::string& name);
Scm build_scm(const std::string& name);

}  // namespace mgiss::fixtures
