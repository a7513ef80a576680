#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hyc/error.hpp"
#include "hyc/linalg.hpp"

namespace hyc {

using VertexId = std::size_t;
using Edge = std::vector<VertexId>;

// Names minted by rewrites start with this prefix; the parser refuses them in
// user input unless explicitly allowed.
inline constexpr std::string_view kReservedPrefix = "_g";

inline bool is_valid_vertex_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isprint(u) && !std::isspace(u) && c != '#';
  });
}

// A finite hypergraph: the presentation datum of a free hypergraph
// C*-algebra. Vertices carry string identifiers (one generating projection
// each); edges are ordered lists of distinct vertex indices (one partition of
// unity each). Immutable once constructed.
class Hypergraph {
 public:
  Hypergraph() = default;

  Hypergraph(std::vector<std::string> vertices, std::vector<Edge> edges)
      : names_(std::move(vertices)), edges_(std::move(edges)) {
    index_.reserve(names_.size());
    for (VertexId v = 0; v < names_.size(); ++v) {
      if (!is_valid_vertex_name(names_[v]))
        throw InvalidArgument("invalid vertex identifier '" + names_[v] + "'");
      if (!index_.emplace(names_[v], v).second)
        throw InvalidArgument("duplicate vertex identifier '" + names_[v] + "'");
    }
    incidence_.assign(names_.size(), {});
    co_edge_.assign(names_.size() * names_.size(), false);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const Edge& edge = edges_[e];
      for (std::size_t i = 0; i < edge.size(); ++i) {
        if (edge[i] >= names_.size()) throw InvalidArgument("edge " + std::to_string(e) + " references unknown vertex");
        for (std::size_t j = 0; j < i; ++j)
          if (edge[i] == edge[j])
            throw InvalidArgument("vertex '" + names_[edge[i]] + "' repeated in edge " + std::to_string(e));
        incidence_[edge[i]].push_back(e);
        for (std::size_t j = 0; j < i; ++j) {
          co_edge_[edge[i] * names_.size() + edge[j]] = true;
          co_edge_[edge[j] * names_.size() + edge[i]] = true;
        }
      }
    }
    for (VertexId v = 0; v < names_.size(); ++v)
      if (incidence_[v].empty()) throw InvalidArgument("vertex '" + names_[v] + "' is contained in no edge");
  }

  // Vertices are declared in order of first appearance.
  static Hypergraph from_named_edges(const std::vector<std::vector<std::string>>& edges) {
    std::vector<std::string> names;
    std::unordered_map<std::string, VertexId> index;
    std::vector<Edge> ids;
    ids.reserve(edges.size());
    for (const auto& e : edges) {
      Edge edge;
      edge.reserve(e.size());
      for (const auto& n : e) {
        auto [it, inserted] = index.emplace(n, names.size());
        if (inserted) names.push_back(n);
        edge.push_back(it->second);
      }
      ids.push_back(std::move(edge));
    }
    return Hypergraph(std::move(names), std::move(ids));
  }

  std::size_t num_vertices() const noexcept { return names_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<std::string>& vertices() const noexcept { return names_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::string& name(VertexId v) const { return names_.at(v); }

  std::optional<VertexId> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  VertexId id(std::string_view name) const {
    auto v = find(name);
    if (!v) throw InvalidArgument("unknown vertex '" + std::string(name) + "'");
    return *v;
  }

  // Edges containing v, in stored order.
  const std::vector<std::size_t>& incident_edges(VertexId v) const { return incidence_.at(v); }

  // True when v != w occur together in some edge (p_v p_w = 0 in C*(H)).
  bool co_edge(VertexId v, VertexId w) const { return co_edge_[v * names_.size() + w]; }

  std::vector<std::string> edge_names(std::size_t e) const {
    std::vector<std::string> out;
    for (VertexId v : edges_.at(e)) out.push_back(names_[v]);
    return out;
  }

  std::vector<std::string> sorted_edge_names(std::size_t e) const {
    auto out = edge_names(e);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool has_empty_edge() const {
    return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.empty(); });
  }

 private:
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<std::vector<std::size_t>> incidence_;
  std::vector<bool> co_edge_;
};

using NamedEdgeMultiset = std::vector<std::vector<std::string>>;

// Edge multiset with every edge sorted by identifier and the edges sorted;
// two hypergraphs are equal "up to ordering" iff these agree.
inline NamedEdgeMultiset canonical_edges(const Hypergraph& h) {
  NamedEdgeMultiset out;
  out.reserve(h.num_edges());
  for (std::size_t e = 0; e < h.num_edges(); ++e) out.push_back(h.sorted_edge_names(e));
  std::sort(out.begin(), out.end());
  return out;
}

inline bool same_up_to_ordering(const Hypergraph& a, const Hypergraph& b) {
  auto va = a.vertices(), vb = b.vertices();
  std::sort(va.begin(), va.end());
  std::sort(vb.begin(), vb.end());
  return va == vb && canonical_edges(a) == canonical_edges(b);
}

inline std::set<std::vector<std::string>> edge_set(const Hypergraph& h) {
  auto m = canonical_edges(h);
  return {m.begin(), m.end()};
}

// Drops repeated edges (as vertex sets), keeping first occurrences.
inline Hypergraph dedup_edges(const Hypergraph& h) {
  std::set<std::vector<std::string>> seen;
  NamedEdgeMultiset kept;
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    if (seen.insert(h.sorted_edge_names(e)).second) kept.push_back(h.edge_names(e));
  }
  std::vector<Edge> edges;
  for (const auto& e : kept) {
    Edge ids;
    for (const auto& n : e) ids.push_back(h.id(n));
    edges.push_back(std::move(ids));
  }
  return Hypergraph(h.vertices(), std::move(edges));
}

// Non-fatal findings; currently only repeated edges.
inline std::vector<std::string> validation_warnings(const Hypergraph& h) {
  std::vector<std::string> out;
  std::map<std::vector<std::string>, std::size_t> first;
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    auto [it, inserted] = first.emplace(h.sorted_edge_names(e), e);
    if (!inserted)
      out.push_back("edge " + std::to_string(e) + " duplicates edge " + std::to_string(it->second));
  }
  return out;
}

// Mints identifiers `_g<n>` that are guaranteed not to clash with any vertex
// already present in the source hypergraph.
class FreshNames {
 public:
  FreshNames() = default;
  explicit FreshNames(const Hypergraph& h) { observe(h); }

  void observe(const Hypergraph& h) {
    for (const auto& n : h.vertices()) observe(n);
  }

  void observe(std::string_view n) {
    if (n.substr(0, kReservedPrefix.size()) != kReservedPrefix) return;
    auto digits = n.substr(kReservedPrefix.size());
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && value >= next_) next_ = value + 1;
  }

  std::string next() { return std::string(kReservedPrefix) + std::to_string(next_++); }

 private:
  std::size_t next_ = 1;
};

// Mutable accumulation of named edges, used by builders and rewrites before
// freezing into an immutable Hypergraph.
class HypergraphBuilder {
 public:
  HypergraphBuilder() = default;
  explicit HypergraphBuilder(const Hypergraph& h) {
    for (const auto& n : h.vertices()) add_vertex(n);
    for (const auto& e : h.edges()) edges_.push_back(e);
  }

  VertexId add_vertex(const std::string& name) {
    auto [it, inserted] = index_.emplace(name, names_.size());
    if (inserted) names_.push_back(name);
    return it->second;
  }

  std::size_t add_edge(const std::vector<std::string>& names) {
    Edge e;
    for (const auto& n : names) e.push_back(add_vertex(n));
    edges_.push_back(std::move(e));
    return edges_.size() - 1;
  }

  std::size_t add_edge(Edge e) {
    edges_.push_back(std::move(e));
    return edges_.size() - 1;
  }

  VertexId id(const std::string& name) const { return index_.at(name); }
  const std::string& name(VertexId v) const { return names_.at(v); }
  std::vector<Edge>& edges() { return edges_; }

  Hypergraph build() const { return Hypergraph(names_, edges_); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<Edge> edges_;
};

// Unordered pair of distinct co-edge vertices, stored with a < b.
struct OrthoPair {
  std::string a;
  std::string b;
  OrthoPair(std::string x, std::string y) : a(std::move(x)), b(std::move(y)) {
    if (b < a) std::swap(a, b);
  }
  friend auto operator<=>(const OrthoPair&, const OrthoPair&) = default;
};

// Generators of the orthogonality ideal: all unordered pairs of distinct
// vertices that share an edge.
inline std::set<OrthoPair> orthogonality_pairs(const Hypergraph& h) {
  std::set<OrthoPair> out;
  for (const auto& e : h.edges())
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j) out.emplace(h.name(e[i]), h.name(e[j]));
  return out;
}

// Affine relation vector (chi_e | 1) of an edge.
inline SparseRow edge_relation_vector(const Hypergraph& h, std::size_t e) {
  SparseRow row;
  for (VertexId v : h.edge(e)) row.emplace_back(v, Rational(1));
  row.emplace_back(h.num_vertices(), Rational(1));
  std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return row;
}

// Rank of the rational span of the relation vectors of the given edges.
inline std::size_t relation_rank(const Hypergraph& h, const std::vector<std::size_t>& edges) {
  RationalEliminator elim(h.num_vertices() + 1, false);
  for (std::size_t e : edges) elim.insert(edge_relation_vector(h, e), Rational(0), e);
  return elim.rank();
}

// Edges whose partition-of-unity relation is a rational linear combination of
// the relations of earlier kept edges. Removing all reported edges at once
// leaves the span unchanged; their number is |E| - rank.
inline std::vector<std::size_t> redundant_edges(const Hypergraph& h) {
  RationalEliminator elim(h.num_vertices() + 1, false);
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < h.num_edges(); ++e)
    if (elim.insert(edge_relation_vector(h, e), Rational(0), e) != RationalEliminator::Outcome::independent)
      out.push_back(e);
  return out;
}

inline Hypergraph remove_edges(const Hypergraph& h, const std::vector<std::size_t>& drop) {
  std::set<std::size_t> d(drop.begin(), drop.end());
  NamedEdgeMultiset kept;
  for (std::size_t e = 0; e < h.num_edges(); ++e)
    if (!d.count(e)) kept.push_back(h.edge_names(e));
  return Hypergraph::from_named_edges(kept);
}

}  // namespace hyc
