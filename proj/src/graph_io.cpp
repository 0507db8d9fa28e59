#include "mgiss/graph_io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "mgiss/error.hpp"

namespace mgiss {

namespace {

// Assigns dense ids to labels in first-appearance order.
class LabelTable {
 public:
  NodeId intern(const std::string& label) {
    auto [it, inserted] = ids_.try_emplace(label, static_cast<NodeId>(labels_.size()));
    if (inserted) labels_.push_back(label);
    return it->second;
  }

  std::optional<NodeId> find(const std::string& label) const {
    auto it = ids_.find(label);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<std::string> take() { return std::move(labels_); }
  std::size_t size() const { return labels_.size(); }

 private:
  std::map<std::string, NodeId> ids_;
  std::vector<std::string> labels_;
};

struct Token {
  enum class Kind { kId, kSymbol, kEnd } kind = Kind::kEnd;
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

// Shared lexer for DOT and BIF. Identifiers are runs of [A-Za-z0-9_.-] or
// double-quoted strings; everything else is a one-character symbol except "->"
// and "--".
class Lexer {
 public:
  Lexer(std::string_view text, bool hash_comments) : text_(text), hash_comments_(hash_comments) {}

  Token next() {
    skip_space_and_comments();
    Token tok;
    tok.line = line_;
    tok.column = column_;
    if (pos_ >= text_.size()) return tok;
    char c = text_[pos_];
    if (c == '"') {
      advance();
      std::string value;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) advance();
        value += text_[pos_];
        advance();
      }
      if (pos_ >= text_.size()) throw ParseError(tok.line, tok.column, "unterminated string");
      advance();
      tok.kind = Token::Kind::kId;
      tok.text = std::move(value);
      return tok;
    }
    if ((c == '-') && pos_ + 1 < text_.size() && (text_[pos_ + 1] == '>' || text_[pos_ + 1] == '-')) {
      tok.kind = Token::Kind::kSymbol;
      tok.text = text_.substr(pos_, 2);
      advance();
      advance();
      return tok;
    }
    if (is_id_char(c)) {
      tok.kind = Token::Kind::kId;
      while (pos_ < text_.size() && is_id_char(text_[pos_])) {
        if (text_[pos_] == '-' && pos_ + 1 < text_.size() && (text_[pos_ + 1] == '>' || text_[pos_ + 1] == '-')) break;
        tok.text += text_[pos_];
        advance();
      }
      return tok;
    }
    tok.kind = Token::Kind::kSymbol;
    tok.text = std::string(1, c);
    advance();
    return tok;
  }

 private:
  static bool is_id_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    for (;;) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
      if (pos_ >= text_.size()) return;
      if (text_.compare(pos_, 2, "//") == 0 || (hash_comments_ && text_[pos_] == '#')) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (text_.compare(pos_, 2, "/*") == 0) {
        std::size_t line = line_;
        std::size_t column = column_;
        advance();
        advance();
        while (pos_ < text_.size() && text_.compare(pos_, 2, "*/") != 0) advance();
        if (pos_ >= text_.size()) throw ParseError(line, column, "unterminated comment");
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  bool hash_comments_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class TokenStream {
 public:
  TokenStream(std::string_view text, bool hash_comments) : lexer_(text, hash_comments) { current_ = lexer_.next(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token tok = std::move(current_);
    current_ = lexer_.next();
    return tok;
  }

  bool at_symbol(std::string_view s) const {
    return current_.kind == Token::Kind::kSymbol && current_.text == s;
  }

  bool at_end() const { return current_.kind == Token::Kind::kEnd; }

  Token expect_symbol(std::string_view s) {
    if (!at_symbol(s)) fail("expected '" + std::string(s) + "'");
    return take();
  }

  Token expect_id(const std::string& what) {
    if (current_.kind != Token::Kind::kId) fail("expected " + what);
    return take();
  }

  [[noreturn]] void fail(const std::string& message) const {
    std::string found = current_.kind == Token::Kind::kEnd ? "end of input" : "'" + current_.text + "'";
    throw ParseError(current_.line, current_.column, message + ", found " + found);
  }

  // Consumes a brace-delimited block whose '{' is the current token.
  void skip_block() {
    Token open = expect_symbol("{");
    std::size_t depth = 1;
    while (depth > 0) {
      if (at_end()) throw ParseError(open.line, open.column, "unclosed block");
      Token tok = take();
      if (tok.kind != Token::Kind::kSymbol) continue;
      if (tok.text == "{") ++depth;
      if (tok.text == "}") --depth;
    }
  }

 private:
  Lexer lexer_;
  Token current_;
};

}  // namespace

Dag parse_edge_list(std::string_view text) {
  LabelTable labels;
  std::vector<Edge> edges;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() == 1) {
      labels.intern(tokens[0]);
    } else if (tokens.size() == 2 && tokens[0] != "->" && tokens[1] != "->") {
      NodeId from = labels.intern(tokens[0]);
      edges.emplace_back(from, labels.intern(tokens[1]));
    } else if (tokens.size() == 3 && tokens[1] == "->") {
      NodeId from = labels.intern(tokens[0]);
      edges.emplace_back(from, labels.intern(tokens[2]));
    } else {
      auto column = line.find_first_not_of(" \t") + 1;
      throw ParseError(line_no, column, "expected 'SRC DST' or 'SRC -> DST'");
    }
  }
  std::size_t n = labels.size();
  return Dag::build(n, edges, labels.take());
}

std::string serialize_edge_list(const Dag& dag) {
  std::string out;
  for (const auto& label : dag.labels()) {
    bool plain = !label.empty() && label != "->" && label.find('#') == std::string::npos &&
                 std::none_of(label.begin(), label.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (!plain) throw Error(ErrorCode::kParseError, "label \"" + label + "\" cannot be written as an edge-list token");
    out += label;
    out += '\n';
  }
  for (const auto& [from, to] : dag.edges()) {
    out += dag.label(from);
    out += " -> ";
    out += dag.label(to);
    out += '\n';
  }
  return out;
}

Dag parse_dot_subset(std::string_view text) {
  TokenStream ts(text, /*hash_comments=*/true);
  LabelTable labels;
  std::vector<Edge> edges;

  auto skip_attributes = [&] {
    while (ts.at_symbol("[")) {
      Token open = ts.take();
      while (!ts.at_symbol("]")) {
        if (ts.at_end()) throw ParseError(open.line, open.column, "unclosed attribute list");
        ts.take();
      }
      ts.take();
    }
  };

  if (ts.peek().kind == Token::Kind::kId && ts.peek().text == "strict") ts.take();
  if (ts.peek().kind != Token::Kind::kId || ts.peek().text != "digraph") ts.fail("expected 'digraph'");
  ts.take();
  if (ts.peek().kind == Token::Kind::kId) ts.take();
  Token open = ts.expect_symbol("{");
  for (;;) {
    if (ts.at_end()) throw ParseError(open.line, open.column, "unclosed graph body");
    if (ts.at_symbol("}")) {
      ts.take();
      break;
    }
    if (ts.at_symbol(";") || ts.at_symbol(",")) {
      ts.take();
      continue;
    }
    Token head = ts.expect_id("a node id or statement");
    if (head.text == "subgraph") throw ParseError(head.line, head.column, "subgraphs are not supported");
    if (head.text == "graph" || head.text == "node" || head.text == "edge") {
      skip_attributes();
      continue;
    }
    if (ts.at_symbol("=")) {
      ts.take();
      ts.expect_id("an attribute value");
      continue;
    }
    if (ts.at_symbol("--")) ts.fail("undirected edges are not supported");
    NodeId prev = labels.intern(head.text);
    while (ts.at_symbol("->")) {
      ts.take();
      NodeId next = labels.intern(ts.expect_id("a node id").text);
      edges.emplace_back(prev, next);
      prev = next;
    }
    if (ts.at_symbol("--")) ts.fail("undirected edges are not supported");
    skip_attributes();
  }
  if (!ts.at_end()) ts.fail("unexpected content after graph body");
  std::size_t n = labels.size();
  return Dag::build(n, edges, labels.take());
}

std::string serialize_dot(const Dag& dag) {
  std::string out = "digraph G {\n";
  for (const auto& label : dag.labels()) out += "  \"" + label + "\";\n";
  for (const auto& [from, to] : dag.edges()) {
    out += "  \"" + dag.label(from) + "\" -> \"" + dag.label(to) + "\";\n";
  }
  out += "}\n";
  return out;
}

Dag parse_bif_structure(std::string_view text) {
  TokenStream ts(text, /*hash_comments=*/false);
  LabelTable labels;
  struct Reference {
    Token child;
    std::vector<Token> parents;
  };
  std::vector<Reference> references;

  while (!ts.at_end()) {
    Token keyword = ts.expect_id("'network', 'variable' or 'probability'");
    if (keyword.text == "network") {
      while (!ts.at_symbol("{")) {
        if (ts.at_end()) ts.fail("expected '{'");
        ts.take();
      }
      ts.skip_block();
    } else if (keyword.text == "variable") {
      Token name = ts.expect_id("a variable name");
      if (labels.find(name.text)) throw ParseError(name.line, name.column, "variable '" + name.text + "' declared twice");
      labels.intern(name.text);
      ts.skip_block();
    } else if (keyword.text == "probability") {
      ts.expect_symbol("(");
      Reference ref{ts.expect_id("a variable name"), {}};
      if (ts.at_symbol("|")) {
        ts.take();
        ref.parents.push_back(ts.expect_id("a parent name"));
        while (ts.at_symbol(",")) {
          ts.take();
          ref.parents.push_back(ts.expect_id("a parent name"));
        }
      }
      ts.expect_symbol(")");
      ts.skip_block();
      references.push_back(std::move(ref));
    } else {
      throw ParseError(keyword.line, keyword.column, "unexpected '" + keyword.text + "'");
    }
  }

  std::vector<Edge> edges;
  auto resolve = [&](const Token& tok) {
    auto id = labels.find(tok.text);
    if (!id) {
      throw Error(ErrorCode::kUnknownVariable, "'" + tok.text + "' at line " + std::to_string(tok.line) +
                                                   ", column " + std::to_string(tok.column));
    }
    return *id;
  };
  for (const auto& ref : references) {
    NodeId child = resolve(ref.child);
    for (const auto& parent : ref.parents) edges.emplace_back(resolve(parent), child);
  }
  std::size_t n = labels.size();
  return Dag::build(n, edges, labels.take());
}

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "auto") return GraphFormat::kAuto;
  if (name == "edges") return GraphFormat::kEdgeList;
  if (name == "dot") return GraphFormat::kDot;
  if (name == "bif") return GraphFormat::kBif;
  throw Error(ErrorCode::kParseError, "unknown graph format '" + std::string(name) + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Dag load_graph(const std::string& path, GraphFormat format) {
  if (format == GraphFormat::kAuto) {
    auto ends_with = [&](std::string_view suffix) {
      return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with(".bif")) {
      format = GraphFormat::kBif;
    } else if (ends_with(".dot") || ends_with(".gv")) {
      format = GraphFormat::kDot;
    } else {
      format = GraphFormat::kEdgeList;
    }
  }
  const std::string text = read_file(path);
  switch (format) {
    case GraphFormat::kBif: return parse_bif_structure(text);
    case GraphFormat::kDot: return parse_dot_subset(text);
    default: return parse_edge_list(text);
  }
}

}  // namespace mgiss
