#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hyc/error.hpp"
#include "hyc/hypergraph.hpp"

namespace hyc {

// An extra relation between two generating projections that can be imposed
// while staying inside the class of free hypergraph C*-algebras.
struct Relation {
  enum class Kind { zero, equal, orthogonal, leq, commute, sum_leq_one };

  Kind kind;
  std::string v;
  std::string w;  // unused for zero

  static Relation zero(std::string v) { return {Kind::zero, std::move(v), {}}; }
  static Relation equal(std::string v, std::string w) { return {Kind::equal, std::move(v), std::move(w)}; }
  static Relation orthogonal(std::string v, std::string w) { return {Kind::orthogonal, std::move(v), std::move(w)}; }
  static Relation leq(std::string v, std::string w) { return {Kind::leq, std::move(v), std::move(w)}; }
  static Relation commute(std::string v, std::string w) { return {Kind::commute, std::move(v), std::move(w)}; }
  static Relation sum_leq_one(std::string v, std::string w) { return {Kind::sum_leq_one, std::move(v), std::move(w)}; }
};

inline std::string to_string(Relation::Kind k) {
  switch (k) {
    case Relation::Kind::zero: return "zero";
    case Relation::Kind::equal: return "equal";
    case Relation::Kind::orthogonal: return "orthogonal";
    case Relation::Kind::leq: return "leq";
    case Relation::Kind::commute: return "commute";
    case Relation::Kind::sum_leq_one: return "sum-leq-one";
  }
  return "?";
}

inline Relation::Kind parse_relation_kind(const std::string& s) {
  if (s == "zero") return Relation::Kind::zero;
  if (s == "equal") return Relation::Kind::equal;
  if (s == "orthogonal") return Relation::Kind::orthogonal;
  if (s == "leq") return Relation::Kind::leq;
  if (s == "commute") return Relation::Kind::commute;
  if (s == "sum-leq-one") return Relation::Kind::sum_leq_one;
  throw InvalidArgument("unknown relation kind '" + s + "'");
}

// Mutable hypergraph under a sequence of rewrites.
class RewriteWorkspace {
 public:
  explicit RewriteWorkspace(const Hypergraph& h) : fresh_(h) {
    for (const auto& n : h.vertices()) add_vertex(n);
    for (std::size_t e = 0; e < h.num_edges(); ++e) edges_.push_back(h.edge_names(e));
  }

  std::string fresh() {
    auto n = fresh_.next();
    add_vertex(n);
    return n;
  }

  bool has_vertex(const std::string& n) const { return present_.count(n) > 0; }
  void add_edge(std::vector<std::string> e) { edges_.push_back(std::move(e)); }
  std::vector<std::vector<std::string>>& edges() { return edges_; }

  void remove_vertex(const std::string& n) {
    present_.erase(n);
    order_.erase(std::remove(order_.begin(), order_.end(), n), order_.end());
    for (auto& e : edges_) e.erase(std::remove(e.begin(), e.end(), n), e.end());
  }

  void apply(const Relation& r) {
    require(r.v);
    if (r.kind != Relation::Kind::zero) {
      require(r.w);
      if (r.v == r.w) throw InvalidArgument(to_string(r.kind) + " relation needs two distinct vertices");
    }
    switch (r.kind) {
      case Relation::Kind::zero:
        remove_vertex(r.v);
        break;
      case Relation::Kind::equal: {
        auto u = fresh();
        add_edge({u, r.v});
        add_edge({u, r.w});
        break;
      }
      case Relation::Kind::orthogonal: {
        auto u = fresh();
        add_edge({u, r.v, r.w});
        break;
      }
      case Relation::Kind::leq: {
        const std::vector<std::string>* host = nullptr;
        for (const auto& e : edges_)
          if (std::find(e.begin(), e.end(), r.w) != e.end()) {
            host = &e;
            break;
          }
        if (!host) throw InvalidArgument("vertex '" + r.w + "' lies in no edge");
        std::vector<std::string> others;
        for (const auto& x : *host)
          if (x != r.w) others.push_back(x);
        bool self = false;
        for (const auto& x : others) {
          if (x == r.v) {
            // p_v <= p_w together with p_v p_w = 0 forces p_v = 0.
            self = true;
            continue;
          }
          apply(Relation::orthogonal(r.v, x));
        }
        if (self) remove_vertex(r.v);
        break;
      }
      case Relation::Kind::commute:
      case Relation::Kind::sum_leq_one: {
        const bool with_vw = r.kind == Relation::Kind::commute;
        std::string vw = with_vw ? fresh() : std::string();
        auto nv_w = fresh();   // (1 - p_v) p_w
        auto v_nw = fresh();   // p_v (1 - p_w)
        auto nv_nw = fresh();  // (1 - p_v)(1 - p_w)
        add_edge({r.v, nv_w, nv_nw});
        add_edge({r.w, v_nw, nv_nw});
        if (with_vw)
          add_edge({vw, nv_w, v_nw, nv_nw});
        else
          add_edge({nv_w, v_nw, nv_nw});
        break;
      }
    }
  }

  Hypergraph build() const {
    std::vector<Edge> ids;
    std::map<std::string, VertexId> index;
    for (VertexId i = 0; i < order_.size(); ++i) index.emplace(order_[i], i);
    for (const auto& e : edges_) {
      Edge edge;
      for (const auto& n : e) edge.push_back(index.at(n));
      ids.push_back(std::move(edge));
    }
    return Hypergraph(order_, std::move(ids));
  }

 private:
  void add_vertex(const std::string& n) {
    if (present_.insert(n).second) order_.push_back(n);
  }
  void require(const std::string& n) const {
    if (!has_vertex(n)) throw InvalidArgument("unknown vertex '" + n + "'");
  }

  FreshNames fresh_;
  std::vector<std::string> order_;
  std::set<std::string> present_;
  std::vector<std::vector<std::string>> edges_;
};

// Gadget rewrites: returns a hypergraph whose algebra is C*(h) with the extra
// relation imposed. Fresh vertices use the `_g` prefix.
inline Hypergraph impose_relation(const Hypergraph& h, const Relation& r) {
  RewriteWorkspace ws(h);
  ws.apply(r);
  return ws.build();
}

inline Hypergraph impose_relations(const Hypergraph& h, const std::vector<Relation>& rs) {
  RewriteWorkspace ws(h);
  for (const auto& r : rs) ws.apply(r);
  return ws.build();
}

// Four vertices {a,b,v,c} with edges {a,v,c}, {a,b,c}, {b,v,c}. The relations
// force p_a = p_b = p_v = 0 and p_c = 1.
inline Hypergraph build_zero_gadget() {
  return Hypergraph::from_named_edges({{"a", "v", "c"}, {"a", "b", "c"}, {"b", "v", "c"}});
}

// Linear 3-uniform gadget pinning `anchor` to zero: every edge has three
// vertices, any two edges share at most one vertex, and the algebra of the
// gadget alone is C (all projections are scalars, p_anchor = 0).
//
// Layout: a 3x3 grid whose (1,1) cell is split into x (row) and y (column),
// so row sums minus column sums give p_x = p_y; the edge {x,y,m} then makes
// them orthogonal, hence zero, and p_m = 1. Edges through m zero out the grid
// cells off the cycle permutation 1->2->3->1.
inline void attach_linear_zero_gadget(RewriteWorkspace& ws, const std::string& anchor) {
  const std::string& x = anchor;
  auto y = ws.fresh();
  auto m = ws.fresh();
  std::array<std::array<std::string, 3>, 3> g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != 0 || j != 0) g[i][j] = ws.fresh();
  auto f = ws.fresh();
  ws.add_edge({x, g[0][1], g[0][2]});
  ws.add_edge({g[1][0], g[1][1], g[1][2]});
  ws.add_edge({g[2][0], g[2][1], g[2][2]});
  ws.add_edge({y, g[1][0], g[2][0]});
  ws.add_edge({g[0][1], g[1][1], g[2][1]});
  ws.add_edge({g[0][2], g[1][2], g[2][2]});
  ws.add_edge({x, y, m});
  ws.add_edge({m, g[0][2], g[1][0]});
  ws.add_edge({m, g[1][1], g[2][2]});
  ws.add_edge({m, g[2][1], f});
}

inline Hypergraph build_linear_zero_gadget(const std::string& anchor = "z") {
  RewriteWorkspace ws(Hypergraph::from_named_edges({{anchor}}));
  ws.edges().clear();
  attach_linear_zero_gadget(ws, anchor);
  return ws.build();
}

namespace detail {

// Linear 3-uniform hypergraph with C*(H) = 0: a zero gadget whose forced-one
// vertex is itself pinned to zero by a second gadget.
inline void emit_linear_zero_algebra(RewriteWorkspace& ws) {
  auto z = ws.fresh();
  attach_linear_zero_gadget(ws, z);
  // The gadget's edge {z, y, m} is the 7th edge emitted; m is forced to one.
  const auto& xym = ws.edges()[ws.edges().size() - 4];
  std::string m = xym[2];
  attach_linear_zero_gadget(ws, m);
}

inline std::size_t intersection_size(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::size_t n = 0;
  for (const auto& x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) ++n;
  return n;
}

}  // namespace detail

// Rewrites h into an equivalent hypergraph in which every edge has exactly
// three vertices and two edges share at most one vertex.
//
//  0. repeated edges are dropped; an empty edge means C*(h) = 0 and the output
//     is a fixed linear 3-uniform presentation of the zero algebra;
//  a. an edge with more than three vertices is split as e1 u {s}, e2 u {t},
//     {s,t}, with e1 the two lexicographically smallest vertices;
//  b. edges of size one or two are padded with fresh vertices, each pinned to
//     zero by a linear zero gadget;
//  c. an edge {u,v,w} meeting an earlier edge {t,u,v} in two vertices is
//     replaced by the equality p_w = p_t, realised as {u',w,z1}, {u',t,z2}
//     with z1, z2 pinned to zero.
// All auxiliary projections are uniquely determined by the original ones, so
// classical solutions correspond one-to-one.
inline Hypergraph three_uniform(const Hypergraph& h) {
  Hypergraph base = dedup_edges(h);
  if (base.has_empty_edge()) {
    RewriteWorkspace ws(Hypergraph::from_named_edges({}));
    detail::emit_linear_zero_algebra(ws);
    return ws.build();
  }
  RewriteWorkspace ws(base);
  auto& edges = ws.edges();

  for (std::size_t i = 0; i < edges.size(); ++i) {
    while (edges[i].size() > 3) {
      std::vector<std::string> sorted = edges[i];
      std::sort(sorted.begin(), sorted.end());
      std::vector<std::string> e1(sorted.begin(), sorted.begin() + 2);
      std::vector<std::string> e2(sorted.begin() + 2, sorted.end());
      auto s = ws.fresh();
      auto t = ws.fresh();
      e1.push_back(s);
      e2.push_back(t);
      edges[i] = std::move(e1);
      ws.add_edge(std::move(e2));
      ws.add_edge({s, t});
    }
  }

  const std::size_t padded_upto = edges.size();
  for (std::size_t i = 0; i < padded_upto; ++i) {
    while (edges[i].size() < 3) {
      auto z = ws.fresh();
      edges[i].push_back(z);
      attach_linear_zero_gadget(ws, z);
    }
  }

  // Only edges from the split/pad phases can overlap; gadget edges each carry
  // at most one non-fresh vertex. One ordered pass therefore reaches the
  // fixpoint: a later edge overlapping a surviving earlier edge is replaced.
  std::vector<bool> removed(padded_upto, false);
  std::vector<std::pair<std::string, std::string>> equalities;
  for (std::size_t j = 0; j < padded_upto; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (removed[i]) continue;
      if (detail::intersection_size(edges[i], edges[j]) != 2) continue;
      std::string t, w;
      for (const auto& x : edges[i])
        if (std::find(edges[j].begin(), edges[j].end(), x) == edges[j].end()) t = x;
      for (const auto& x : edges[j])
        if (std::find(edges[i].begin(), edges[i].end(), x) == edges[i].end()) w = x;
      removed[j] = true;
      equalities.emplace_back(w, t);
      break;
    }
  }
  std::vector<std::vector<std::string>> kept;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (i >= padded_upto || !removed[i]) kept.push_back(edges[i]);
  edges = std::move(kept);
  for (const auto& [w, t] : equalities) {
    auto u = ws.fresh();
    auto z1 = ws.fresh();
    auto z2 = ws.fresh();
    ws.add_edge({u, w, z1});
    ws.add_edge({u, t, z2});
    attach_linear_zero_gadget(ws, z1);
    attach_linear_zero_gadget(ws, z2);
  }
  return ws.build();
}

inline bool is_three_uniform_linear(const Hypergraph& h) {
  for (const auto& e : h.edges())
    if (e.size() != 3) return false;
  std::set<std::pair<VertexId, VertexId>> pairs;
  for (const auto& e : h.edges())
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = a + 1; b < 3; ++b) {
        auto p = std::minmax(e[a], e[b]);
        if (!pairs.emplace(p.first, p.second).second) return false;
      }
  return true;
}

}  // namespace hyc
