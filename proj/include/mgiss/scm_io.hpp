#pragma once

#include <string>
#include <string_view>

#include "mgiss/scm.hpp"

namespace mgiss {

// Model files are JSON documents:
//
//   {
//     "nodes": [ {"name": "Z", "range": 2, "noise": [0.5, 0.5]}, ... ],
//     "edges": [ ["Z", "A"], ... ],
//     "assignments": { "A": [0, 1, 1, 0], ... }
//   }
//
// Node ids follow the order of "nodes". Each assignment table is row-major over
// the parents' values (parents in node order, last parent fastest) and then the
// noise index, which varies fastest. Noise values are the indices 0..k-1 of the
// probability list.

/// Throws ParseError for malformed JSON, Error(kParseError) for schema
/// violations and the usual model errors (kInvalidModel, kCycleDetected, ...).
Scm parse_scm_json(std::string_view text);

/// Only models without applied interventions can be written.
std::string serialize_scm_json(const Scm& scm);

}  // namespace mgiss
