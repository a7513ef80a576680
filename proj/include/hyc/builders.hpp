#pragma once

#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hyc/error.hpp"
#include "hyc/hg_io.hpp"
#include "hyc/hypergraph.hpp"
#include "hyc/transforms.hpp"

namespace hyc {

// Finite graph on vertices 0..n-1, possibly directed and with loops.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  SimpleGraph(std::size_t n, bool directed) : n_(n), directed_(directed), adj_(n * n, false) {}

  std::size_t size() const noexcept { return n_; }
  bool directed() const noexcept { return directed_; }

  bool adjacent(std::size_t i, std::size_t j) const { return adj_.at(i * n_ + j); }

  void add_arc(std::size_t i, std::size_t j) {
    if (i >= n_ || j >= n_) throw InvalidArgument("graph vertex out of range");
    adj_[i * n_ + j] = true;
    if (!directed_) adj_[j * n_ + i] = true;
  }

  static SimpleGraph complete(std::size_t n) {
    SimpleGraph g(n, false);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) g.add_arc(i, j);
    return g;
  }
  static SimpleGraph empty(std::size_t n) { return SimpleGraph(n, false); }
  static SimpleGraph path(std::size_t n) {
    SimpleGraph g(n, false);
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_arc(i, i + 1);
    return g;
  }
  static SimpleGraph cycle(std::size_t n) {
    SimpleGraph g = path(n);
    if (n > 2) g.add_arc(n - 1, 0);
    return g;
  }

 private:
  std::size_t n_ = 0;
  bool directed_ = false;
  std::vector<bool> adj_;
};

// `.gr` format (vertices are 1-based):
//   n <count>
//   undirected          optional; arcs are then symmetrised
//   a <i> <j>
inline SimpleGraph parse_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> n;
  bool directed = true;
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> arcs;
  auto number = [&](const detail::Token& t) -> std::size_t {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size())
      throw ParseError(lineno, t.column, "expected a non-negative integer, found '" + t.text + "'");
    return v;
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = detail::tokenize_line(line);
    if (tokens.empty()) continue;
    const auto& kw = tokens[0];
    if (kw.text == "n") {
      if (tokens.size() != 2) throw ParseError(lineno, kw.column, "'n' expects one count");
      n = number(tokens[1]);
    } else if (kw.text == "undirected") {
      directed = false;
    } else if (kw.text == "a") {
      if (tokens.size() != 3) throw ParseError(lineno, kw.column, "'a' expects two vertices");
      arcs.emplace_back(number(tokens[1]), number(tokens[2]), lineno);
    } else {
      throw ParseError(lineno, kw.column, "expected 'n', 'a' or 'undirected', found '" + kw.text + "'");
    }
  }
  if (!n) throw ParseError(lineno == 0 ? 1 : lineno, 1, "missing 'n <count>' line");
  SimpleGraph g(*n, directed);
  for (auto [i, j, l] : arcs) {
    if (i < 1 || j < 1 || i > *n || j > *n) throw ParseError(l, 1, "arc endpoint out of range 1.." + std::to_string(*n));
    g.add_arc(i - 1, j - 1);
  }
  return g;
}

inline SimpleGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

// Names such as K3 (complete), E4 (edgeless), P3 (path), C5 (cycle).
inline std::optional<SimpleGraph> named_graph(const std::string& spec) {
  if (spec.size() < 2) return std::nullopt;
  std::size_t n = 0;
  auto [p, ec] = std::from_chars(spec.data() + 1, spec.data() + spec.size(), n);
  if (ec != std::errc() || p != spec.data() + spec.size()) return std::nullopt;
  switch (spec[0]) {
    case 'K': return SimpleGraph::complete(n);
    case 'E': return SimpleGraph::empty(n);
    case 'P': return SimpleGraph::path(n);
    case 'C': return SimpleGraph::cycle(n);
    default: return std::nullopt;
  }
}

inline std::string qperm_name(std::size_t i, std::size_t j) {
  return "p_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

// Row and column partitions of unity of an n x n matrix of projections.
inline Hypergraph build_qperm(std::size_t n) {
  if (n == 0) throw InvalidArgument("qperm needs n >= 1");
  std::vector<std::vector<std::string>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> row;
    for (std::size_t j = 0; j < n; ++j) row.push_back(qperm_name(i, j));
    edges.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::string> col;
    for (std::size_t i = 0; i < n; ++i) col.push_back(qperm_name(i, j));
    edges.push_back(std::move(col));
  }
  return Hypergraph::from_named_edges(edges);
}

inline std::string group_element_name(std::size_t group, std::size_t element) {
  return "c" + std::to_string(group + 1) + "_" + std::to_string(element + 1);
}

// Disjoint edges of the given sizes: C^{n_1} * ... * C^{n_k}.
inline Hypergraph build_free_product(const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) throw InvalidArgument("free product of an empty family");
  std::vector<std::vector<std::string>> edges;
  for (std::size_t g = 0; g < sizes.size(); ++g) {
    if (sizes[g] == 0) throw InvalidArgument("cyclic factor of order 0");
    std::vector<std::string> e;
    for (std::size_t a = 0; a < sizes[g]; ++a) e.push_back(group_element_name(g, a));
    edges.push_back(std::move(e));
  }
  return Hypergraph::from_named_edges(edges);
}

// Graph product of cyclic groups Z_{n_i}: the free product with every pair of
// projections from commuting factors made to commute. `commute` holds 0-based
// factor index pairs.
inline Hypergraph build_graph_product_cyclic(const std::vector<std::size_t>& sizes,
                                             const std::vector<std::pair<std::size_t, std::size_t>>& commute) {
  Hypergraph base = build_free_product(sizes);
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (auto [i, j] : commute) {
    if (i >= sizes.size() || j >= sizes.size()) throw InvalidArgument("factor index out of range");
    if (i == j) throw InvalidArgument("commutation relation must be irreflexive");
    pairs.insert(std::minmax(i, j));
  }
  std::vector<Relation> rels;
  for (auto [i, j] : pairs)
    for (std::size_t a = 0; a < sizes[i]; ++a)
      for (std::size_t b = 0; b < sizes[j]; ++b)
        rels.push_back(Relation::commute(group_element_name(i, a), group_element_name(j, b)));
  return impose_relations(base, rels);
}

// (Z_2 * Z_3) x (Z_2 * Z_3) as a graph product; its group C*-algebra is the
// one whose residual finite-dimensionality is equivalent to Connes embedding.
// This is an algebra-equivalent presentation, not a drawing-exact copy of the
// hypergraph usually pictured for it.
inline Hypergraph build_cep() {
  return build_graph_product_cyclic({2, 3, 2, 3}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

namespace detail {

// Imposes orthogonality for each listed unordered pair; pairs already sharing
// an edge are implied and skipped, a pair (v, v) forces p_v = 0.
inline Hypergraph impose_orthogonalities(const Hypergraph& base,
                                         const std::set<std::pair<std::string, std::string>>& pairs) {
  std::vector<Relation> rels;
  std::vector<Relation> zeros;
  for (const auto& [v, w] : pairs) {
    if (v == w) {
      zeros.push_back(Relation::zero(v));
      continue;
    }
    if (base.co_edge(base.id(v), base.id(w))) continue;
    rels.push_back(Relation::orthogonal(v, w));
  }
  rels.insert(rels.end(), zeros.begin(), zeros.end());
  return impose_relations(base, rels);
}

inline void add_unordered(std::set<std::pair<std::string, std::string>>& s, std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  s.emplace(std::move(a), std::move(b));
}

}  // namespace detail

inline std::string hom_name(std::size_t i, std::size_t j) {
  return "q_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

// Quantum graph homomorphisms g -> target: one partition of unity per vertex
// of g; for i1 ~ i2 in g and j1 !~ j2 in target, q_{i1 j1} q_{i2 j2} = 0.
inline Hypergraph build_hom_game(const SimpleGraph& g, const SimpleGraph& target) {
  if (g.size() == 0) throw InvalidArgument("source graph has no vertices");
  std::vector<std::vector<std::string>> edges;
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::vector<std::string> e;
    for (std::size_t j = 0; j < target.size(); ++j) e.push_back(hom_name(i, j));
    edges.push_back(std::move(e));
  }
  Hypergraph base = target.size() == 0 ? Hypergraph(std::vector<std::string>{}, std::vector<Edge>(g.size()))
                                       : Hypergraph::from_named_edges(edges);
  std::set<std::pair<std::string, std::string>> pairs;
  for (std::size_t i1 = 0; i1 < g.size(); ++i1)
    for (std::size_t i2 = 0; i2 < g.size(); ++i2) {
      if (!g.adjacent(i1, i2)) continue;
      for (std::size_t j1 = 0; j1 < target.size(); ++j1)
        for (std::size_t j2 = 0; j2 < target.size(); ++j2)
          if (!target.adjacent(j1, j2)) detail::add_unordered(pairs, hom_name(i1, j1), hom_name(i2, j2));
    }
  return detail::impose_orthogonalities(base, pairs);
}

// Quantum isomorphisms g -> g2: the quantum permutation hypergraph plus the
// orthogonality form of U A_g = A_g2 U.
inline Hypergraph build_iso_game(const SimpleGraph& g, const SimpleGraph& g2) {
  if (g.size() != g2.size()) throw InvalidArgument("isomorphism game needs graphs of equal size");
  const std::size_t n = g.size();
  Hypergraph base = build_qperm(n);
  std::set<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const bool kj = g.adjacent(k, j);
          const bool il = g2.adjacent(i, l);
          if (kj != il) detail::add_unordered(pairs, qperm_name(i, k), qperm_name(l, j));
        }
  return detail::impose_orthogonalities(base, pairs);
}

}  // namespace hyc
