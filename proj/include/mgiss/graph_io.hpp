#pragma once

#include <string>
#include <string_view>

#include "mgiss/dag.hpp"

namespace mgiss {

/// One edge per line as `SRC DST` or `SRC -> DST`; a lone token declares an
/// isolated node; `#` starts a comment. Labels are non-whitespace tokens mapped
/// to ids in order of first appearance.
Dag parse_edge_list(std::string_view text);

/// Lists every node on its own line (id order) followed by the edges, so
/// parsing the output reproduces the graph exactly.
std::string serialize_edge_list(const Dag& dag);

/// `[strict] digraph [name] { ... }` with node statements, edge chains
/// `a -> b -> c`, attribute lists (ignored), `;`/`,` separators and C/C++/`#`
/// comments. Undirected edges and subgraphs are rejected.
Dag parse_dot_subset(std::string_view text);

std::string serialize_dot(const Dag& dag);

/// Structure of a BIF network: nodes from `variable` blocks (declaration order)
/// and edges from `probability ( X | P1, P2 )` headers. Block bodies are skipped
/// with brace matching. Throws ParseError and Error(kUnknownVariable).
Dag parse_bif_structure(std::string_view text);

enum class GraphFormat { kAuto, kEdgeList, kDot, kBif };

GraphFormat parse_graph_format(std::string_view name);

/// Reads a graph file; kAuto picks by extension (.bif, .dot/.gv, else edge list).
/// Unreadable files raise Error(kParseError).
Dag load_graph(const std::string& path, GraphFormat format = GraphFormat::kAuto);

std::string read_file(const std::string& path);

}  // namespace mgiss
