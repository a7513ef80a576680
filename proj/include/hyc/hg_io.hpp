#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hyc/error.hpp"
#include "hyc/hypergraph.hpp"

namespace hyc {

namespace detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

// Splits a line at whitespace after stripping a `#` comment.
inline std::vector<Token> tokenize_line(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != '#' && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

}  // namespace detail

struct ParseOptions {
  // Permit identifiers with the reserved `_g` prefix (files produced by the
  // rewrites themselves).
  bool allow_reserved = false;
};

// `.hg` format:
//   # comment
//   vertex <id>            optional pre-declaration
//   edge <id> <id> ...     one partition of unity; `edge` alone is the empty edge
inline Hypergraph parse_hypergraph(std::istream& in, ParseOptions opts = {}) {
  std::vector<std::string> names;
  std::unordered_map<std::string, VertexId> index;
  std::vector<Edge> edges;
  std::vector<std::size_t> declared_line;
  bool saw_statement = false;

  auto declare = [&](const detail::Token& t, std::size_t line) -> VertexId {
    if (!is_valid_vertex_name(t.text)) throw ParseError(line, t.column, "invalid vertex identifier '" + t.text + "'");
    if (!opts.allow_reserved && std::string_view(t.text).substr(0, kReservedPrefix.size()) == kReservedPrefix)
      throw ParseError(line, t.column, "identifier '" + t.text + "' uses the reserved prefix '_g'");
    auto [it, inserted] = index.emplace(t.text, names.size());
    if (inserted) {
      names.push_back(t.text);
      declared_line.push_back(line);
    }
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tokens = detail::tokenize_line(line);
    if (tokens.empty()) continue;
    saw_statement = true;
    const auto& kw = tokens.front();
    if (kw.text == "edge") {
      Edge e;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        VertexId v = declare(tokens[i], lineno);
        if (std::find(e.begin(), e.end(), v) != e.end())
          throw ParseError(lineno, tokens[i].column, "vertex '" + tokens[i].text + "' repeated within edge");
        e.push_back(v);
      }
      edges.push_back(std::move(e));
    } else if (kw.text == "vertex") {
      if (tokens.size() != 2) throw ParseError(lineno, kw.column, "'vertex' expects exactly one identifier");
      declare(tokens[1], lineno);
    } else {
      throw ParseError(lineno, kw.column, "expected 'edge' or 'vertex', found '" + kw.text + "'");
    }
  }
  if (!saw_statement) throw ParseError(lineno == 0 ? 1 : lineno, 1, "empty input");

  std::vector<bool> covered(names.size(), false);
  for (const auto& e : edges)
    for (VertexId v : e) covered[v] = true;
  for (VertexId v = 0; v < names.size(); ++v)
    if (!covered[v]) throw ParseError(declared_line[v], 1, "vertex '" + names[v] + "' is contained in no edge");
  return Hypergraph(std::move(names), std::move(edges));
}

inline Hypergraph parse_hypergraph(std::string_view text, ParseOptions opts = {}) {
  std::istringstream in{std::string(text)};
  return parse_hypergraph(in, opts);
}

// Canonical form: one `edge` line per edge in stored order, identifiers within
// an edge sorted lexicographically, single spaces, '\n' line ends.
inline std::string serialize_hypergraph(const Hypergraph& h) {
  std::string out;
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    out += "edge";
    for (const auto& n : h.sorted_edge_names(e)) {
      out += ' ';
      out += n;
    }
    out += '\n';
  }
  return out;
}

}  // namespace hyc
