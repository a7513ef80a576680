#pragma once

#include <charconv>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hyc/error.hpp"
#include "hyc/hg_io.hpp"
#include "hyc/hypergraph.hpp"

namespace hyc {

// A finite diagram of commutative finite-dimensional C*-algebras, given by
// spectra and spectrum maps. Object J with n points stands for C^n; a morphism
// f : J -> J' carries the map of spectra Spec D(J') -> Spec D(J).
struct DiagramObject {
  std::string name;
  std::size_t points = 0;
};

struct DiagramMorphism {
  std::string name;
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> map;  // map[point of target] = point of source

  bool is_identity() const {
    if (source != target) return false;
    for (std::size_t i = 0; i < map.size(); ++i)
      if (map[i] != i) return false;
    return true;
  }
};

struct Diagram {
  std::vector<DiagramObject> objects;
  std::vector<DiagramMorphism> morphisms;

  std::optional<std::size_t> find_object(const std::string& name) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (objects[i].name == name) return i;
    return std::nullopt;
  }

  void validate() const {
    std::set<std::string> seen;
    for (const auto& o : objects) {
      if (!is_valid_vertex_name(o.name) || o.name.find('~') != std::string::npos)
        throw InvalidArgument("invalid object name '" + o.name + "'");
      if (!seen.insert(o.name).second) throw InvalidArgument("duplicate object '" + o.name + "'");
    }
    for (const auto& m : morphisms) {
      if (m.source >= objects.size() || m.target >= objects.size())
        throw InvalidArgument("morphism '" + m.name + "' references an unknown object");
      if (m.map.size() != objects[m.target].points)
        throw InvalidArgument("spectrum map of '" + m.name + "' is not total on " + objects[m.target].name);
      for (std::size_t p : m.map)
        if (p >= objects[m.source].points)
          throw InvalidArgument("spectrum map of '" + m.name + "' leaves " + objects[m.source].name);
    }
  }

  // Appends id_J for every object lacking an identity morphism.
  void add_identities() {
    for (std::size_t j = 0; j < objects.size(); ++j) {
      bool has = false;
      for (const auto& m : morphisms) has = has || (m.source == j && m.is_identity());
      if (has) continue;
      DiagramMorphism id{"id_" + objects[j].name, j, j, {}};
      for (std::size_t p = 0; p < objects[j].points; ++p) id.map.push_back(p);
      morphisms.push_back(std::move(id));
    }
  }
};

// `.diag` format:
//   object <name> <points>
//   morphism <name> <source> <target> : <p'>\><p> ...
// where each pair sends point p' of the target to point p of the source.
inline Diagram parse_diagram(std::istream& in) {
  Diagram d;
  std::string line;
  std::size_t lineno = 0;
  auto number = [&](const std::string& s, std::size_t col) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
      throw ParseError(lineno, col, "expected a non-negative integer, found '" + s + "'");
    return v;
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = detail::tokenize_line(line);
    if (tokens.empty()) continue;
    const auto& kw = tokens[0];
    if (kw.text == "object") {
      if (tokens.size() != 3) throw ParseError(lineno, kw.column, "'object' expects a name and a point count");
      if (d.find_object(tokens[1].text)) throw ParseError(lineno, tokens[1].column, "duplicate object '" + tokens[1].text + "'");
      if (tokens[1].text.find('~') != std::string::npos)
        throw ParseError(lineno, tokens[1].column, "object names may not contain '~'");
      d.objects.push_back({tokens[1].text, number(tokens[2].text, tokens[2].column)});
    } else if (kw.text == "morphism") {
      if (tokens.size() < 5 || tokens[4].text != ":")
        throw ParseError(lineno, kw.column, "expected 'morphism <name> <source> <target> : <pairs>'");
      auto src = d.find_object(tokens[2].text);
      if (!src) throw ParseError(lineno, tokens[2].column, "unknown object '" + tokens[2].text + "'");
      auto tgt = d.find_object(tokens[3].text);
      if (!tgt) throw ParseError(lineno, tokens[3].column, "unknown object '" + tokens[3].text + "'");
      const std::size_t n = d.objects[*tgt].points;
      std::vector<std::optional<std::size_t>> map(n);
      for (std::size_t i = 5; i < tokens.size(); ++i) {
        const auto& t = tokens[i];
        auto gt = t.text.find('>');
        if (gt == std::string::npos) throw ParseError(lineno, t.column, "expected '<target point>><source point>'");
        std::size_t from = number(t.text.substr(0, gt), t.column);
        std::size_t to = number(t.text.substr(gt + 1), t.column + gt + 1);
        if (from >= n) throw ParseError(lineno, t.column, "point " + std::to_string(from) + " not in " + tokens[3].text);
        if (to >= d.objects[*src].points)
          throw ParseError(lineno, t.column + gt + 1, "point " + std::to_string(to) + " not in " + tokens[2].text);
        if (map[from]) throw ParseError(lineno, t.column, "point " + std::to_string(from) + " mapped twice");
        map[from] = to;
      }
      DiagramMorphism m{tokens[1].text, *src, *tgt, {}};
      for (std::size_t p = 0; p < n; ++p) {
        if (!map[p])
          throw ParseError(lineno, kw.column, "spectrum map is not total: point " + std::to_string(p) + " of " +
                                                  tokens[3].text + " unmapped");
        m.map.push_back(*map[p]);
      }
      d.morphisms.push_back(std::move(m));
    } else {
      throw ParseError(lineno, kw.column, "expected 'object' or 'morphism', found '" + kw.text + "'");
    }
  }
  if (d.objects.empty()) throw ParseError(lineno == 0 ? 1 : lineno, 1, "diagram has no objects");
  d.add_identities();
  d.validate();
  return d;
}

inline Diagram parse_diagram(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_diagram(in);
}

inline std::string point_name(const std::string& object, std::size_t p) { return object + "." + std::to_string(p); }

// Hypergraph whose free C*-algebra is the colimit of the diagram.
//
// Edge e_{f,v} = {J.v} u {J'.v' : map(v') != v} for f : J -> J', v a point of J.
// A non-identity endomorphism f : J -> J would put J.v into its own edge
// twice, so it is routed through a copy object J~k (k = morphism position)
// pinned equal to J by an identity-shaped morphism. An object with empty
// spectrum is the zero algebra and contributes an empty edge.
inline Hypergraph encode_colimit(const Diagram& input, bool normalize = false) {
  Diagram d = input;
  d.add_identities();
  d.validate();
  std::vector<DiagramMorphism> routed;
  for (std::size_t k = 0; k < d.morphisms.size(); ++k) {
    const auto& m = d.morphisms[k];
    if (m.source != m.target || m.is_identity()) {
      routed.push_back(m);
      continue;
    }
    const std::size_t j = m.source;
    const std::size_t copy = d.objects.size();
    d.objects.push_back({d.objects[j].name + "~" + std::to_string(k + 1), d.objects[j].points});
    DiagramMorphism same{m.name + "~eq", j, copy, {}};
    for (std::size_t p = 0; p < d.objects[j].points; ++p) same.map.push_back(p);
    DiagramMorphism id = same;
    id.source = copy;
    routed.push_back(std::move(id));
    routed.push_back(std::move(same));
    routed.push_back({m.name, j, copy, m.map});
  }

  std::vector<std::string> names;
  std::vector<std::vector<VertexId>> ids(d.objects.size());
  for (std::size_t j = 0; j < d.objects.size(); ++j)
    for (std::size_t p = 0; p < d.objects[j].points; ++p) {
      ids[j].push_back(names.size());
      names.push_back(point_name(d.objects[j].name, p));
    }

  std::vector<Edge> edges;
  for (std::size_t j = 0; j < d.objects.size(); ++j)
    if (d.objects[j].points == 0) edges.emplace_back();
  for (const auto& m : routed) {
    for (std::size_t v = 0; v < d.objects[m.source].points; ++v) {
      Edge e{ids[m.source][v]};
      for (std::size_t w = 0; w < m.map.size(); ++w)
        if (m.map[w] != v) e.push_back(ids[m.target][w]);
      edges.push_back(std::move(e));
    }
  }
  Hypergraph h(std::move(names), std::move(edges));
  return normalize ? dedup_edges(h) : h;
}

}  // namespace hyc
