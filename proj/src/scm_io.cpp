#include "mgiss/scm_io.hpp"

#include <json.hpp>
#include <map>

#include "mgiss/error.hpp"

namespace mgiss {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& message) { throw Error(ErrorCode::kParseError, message); }

const json& member(const json& object, const char* key) {
  if (!object.is_object() || !object.contains(key)) schema_error(std::string("missing key \"") + key + "\"");
  return object.at(key);
}

ParseError located(std::string_view text, std::size_t byte, const std::string& message) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return ParseError(line, column, message);
}

}  // namespace

Scm parse_scm_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw located(text, e.byte == 0 ? 0 : e.byte - 1, e.what());
  }
  if (!doc.is_object()) schema_error("top level must be an object");

  const json& nodes = member(doc, "nodes");
  if (!nodes.is_array()) schema_error("\"nodes\" must be an array");
  std::vector<std::string> labels;
  std::vector<Value> ranges;
  std::vector<std::vector<double>> noise;
  std::map<std::string, NodeId, std::less<>> ids;
  for (const json& node : nodes) {
    const json& name = member(node, "name");
    const json& range = member(node, "range");
    const json& probs = member(node, "noise");
    if (!name.is_string()) schema_error("node name must be a string");
    if (!range.is_number_integer()) schema_error("node range must be an integer");
    if (!probs.is_array() || probs.empty()) schema_error("node noise must be a non-empty array");
    std::string label = name.get<std::string>();
    if (!ids.emplace(label, static_cast<NodeId>(labels.size())).second) schema_error("duplicate node \"" + label + "\"");
    labels.push_back(std::move(label));
    ranges.push_back(range.get<Value>());
    std::vector<double> p;
    for (const json& q : probs) {
      if (!q.is_number()) schema_error("noise probabilities must be numbers");
      p.push_back(q.get<double>());
    }
    noise.push_back(std::move(p));
  }

  auto lookup = [&](const json& name) {
    if (!name.is_string()) schema_error("node references must be strings");
    auto it = ids.find(name.get<std::string>());
    if (it == ids.end()) throw Error(ErrorCode::kUnknownVariable, "\"" + name.get<std::string>() + "\"");
    return it->second;
  };

  std::vector<Edge> edges;
  const json& edge_list = member(doc, "edges");
  if (!edge_list.is_array()) schema_error("\"edges\" must be an array");
  for (const json& e : edge_list) {
    if (!e.is_array() || e.size() != 2) schema_error("each edge must be a [source, target] pair");
    edges.emplace_back(lookup(e[0]), lookup(e[1]));
  }

  const json& assignments = member(doc, "assignments");
  if (!assignments.is_object()) schema_error("\"assignments\" must be an object");
  std::vector<std::vector<Value>> tables(labels.size());
  std::vector<char> seen(labels.size(), 0);
  for (const auto& [name, table] : assignments.items()) {
    NodeId v = lookup(json(name));
    if (!table.is_array()) schema_error("assignment of \"" + name + "\" must be an array");
    for (const json& x : table) {
      if (!x.is_number_integer()) schema_error("assignment entries must be integers");
      tables[v].push_back(x.get<Value>());
    }
    seen[v] = 1;
  }
  for (NodeId v = 0; v < labels.size(); ++v) {
    if (!seen[v]) schema_error("missing assignment for \"" + labels[v] + "\"");
  }

  const std::size_t node_count = labels.size();
  Dag dag = Dag::build(node_count, edges, std::move(labels));
  return Scm::build(std::move(dag), std::move(ranges), std::move(noise), std::move(tables));
}

std::string serialize_scm_json(const Scm& scm) {
  const Dag& dag = scm.dag();
  json doc;
  doc["nodes"] = json::array();
  for (NodeId v = 0; v < dag.node_count(); ++v) {
    if (scm.mechanism(v).kind != MechanismKind::kTable) {
      throw Error(ErrorCode::kInvalidModel, "cannot serialize an intervened model");
    }
    auto p = scm.noise(v);
    doc["nodes"].push_back({{"name", dag.label(v)},
                            {"range", scm.range_size(v)},
                            {"noise", std::vector<double>(p.begin(), p.end())}});
  }
  doc["edges"] = json::array();
  for (const auto& [from, to] : dag.edges()) doc["edges"].push_back({dag.label(from), dag.label(to)});
  doc["assignments"] = json::object();
  for (NodeId v = 0; v < dag.node_count(); ++v) doc["assignments"][dag.label(v)] = scm.mechanism(v).table;
  return doc.dump(2) + "\n";
}

}  // namespace mgiss
