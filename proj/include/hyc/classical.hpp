#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hyc/hypergraph.hpp"

namespace hyc {

// Truth value per vertex id; exactly one true vertex in every edge.
using Assignment = std::vector<bool>;

inline bool is_exact_one(const Hypergraph& h, const Assignment& a) {
  if (a.size() != h.num_vertices()) return false;
  for (const auto& e : h.edges()) {
    std::size_t n = 0;
    for (VertexId v : e) n += a[v] ? 1 : 0;
    if (n != 1) return false;
  }
  return true;
}

namespace detail {

// Partial assignment with unit propagation for exact-one constraints.
class ExactOneState {
 public:
  static constexpr std::int8_t kUnset = -1;

  explicit ExactOneState(const Hypergraph& h) : h_(&h), value_(h.num_vertices(), kUnset) {}

  std::int8_t value(VertexId v) const { return value_[v]; }

  // Checks every edge once; false on conflict.
  bool initialize() {
    for (std::size_t e = 0; e < h_->num_edges(); ++e)
      if (!check_edge(e)) return false;
    return drain();
  }

  bool assign(VertexId v, bool b) {
    if (!set(v, b)) return false;
    return drain();
  }

  Assignment assignment() const {
    Assignment a(value_.size());
    for (VertexId v = 0; v < value_.size(); ++v) a[v] = value_[v] == 1;
    return a;
  }

 private:
  bool set(VertexId v, bool b) {
    std::int8_t want = b ? 1 : 0;
    if (value_[v] == want) return true;
    if (value_[v] != kUnset) return false;
    value_[v] = want;
    queue_.push_back(v);
    return true;
  }

  bool check_edge(std::size_t e) {
    std::size_t ones = 0, unset = 0;
    VertexId last = 0;
    for (VertexId w : h_->edge(e)) {
      if (value_[w] == 1) ++ones;
      else if (value_[w] == kUnset) {
        ++unset;
        last = w;
      }
    }
    if (ones > 1) return false;
    if (ones == 1) {
      for (VertexId w : h_->edge(e))
        if (value_[w] == kUnset && !set(w, false)) return false;
      return true;
    }
    if (unset == 0) return false;
    if (unset == 1) return set(last, true);
    return true;
  }

  bool drain() {
    while (!queue_.empty()) {
      VertexId v = queue_.back();
      queue_.pop_back();
      for (std::size_t e : h_->incident_edges(v))
        if (!check_edge(e)) {
          queue_.clear();
          return false;
        }
    }
    return true;
  }

  const Hypergraph* h_;
  std::vector<std::int8_t> value_;
  std::vector<VertexId> queue_;
};

inline std::vector<VertexId> vertices_by_name(const Hypergraph& h) {
  std::vector<VertexId> order(h.num_vertices());
  std::iota(order.begin(), order.end(), VertexId{0});
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return h.name(a) < h.name(b); });
  return order;
}

inline bool dpll(ExactOneState& s, const Hypergraph& h, const std::vector<VertexId>& branch_order) {
  std::optional<VertexId> pick;
  for (VertexId v : branch_order)
    if (s.value(v) == ExactOneState::kUnset) {
      pick = v;
      break;
    }
  if (!pick) return true;
  for (bool b : {true, false}) {
    ExactOneState next = s;
    if (next.assign(*pick, b) && dpll(next, h, branch_order)) {
      s = std::move(next);
      return true;
    }
  }
  return false;
}

}  // namespace detail

// First solution found by DPLL; branches on the vertex in most edges (ties by
// identifier), trying true before false.
inline std::optional<Assignment> solve_exact_one(const Hypergraph& h) {
  detail::ExactOneState s(h);
  if (!s.initialize()) return std::nullopt;
  auto order = detail::vertices_by_name(h);
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return h.incident_edges(a).size() > h.incident_edges(b).size();
  });
  if (!detail::dpll(s, h, order)) return std::nullopt;
  return s.assignment();
}

struct Enumeration {
  std::vector<Assignment> solutions;
  bool cap_exceeded = false;
};

// All solutions, ordered lexicographically as 0/1 strings over the vertices
// sorted by identifier. Stops with cap_exceeded once more than `cap` exist.
inline Enumeration enumerate_solutions(const Hypergraph& h, std::size_t cap = 1'000'000) {
  Enumeration out;
  detail::ExactOneState root(h);
  if (!root.initialize()) return out;
  const auto order = detail::vertices_by_name(h);
  auto rec = [&](auto&& self, const detail::ExactOneState& s, std::size_t pos) -> bool {
    while (pos < order.size() && s.value(order[pos]) != detail::ExactOneState::kUnset) ++pos;
    if (pos == order.size()) {
      if (out.solutions.size() == cap) {
        out.cap_exceeded = true;
        return false;
      }
      out.solutions.push_back(s.assignment());
      return true;
    }
    for (bool b : {false, true}) {
      detail::ExactOneState next = s;
      if (next.assign(order[pos], b) && !self(self, next, pos + 1)) return false;
    }
    return true;
  };
  rec(rec, root, 0);
  return out;
}

// "v1=1 v2=0 ..." over vertices sorted by identifier; with `project`, gadget
// vertices (reserved prefix) are left out.
inline std::string format_assignment(const Hypergraph& h, const Assignment& a, bool project = false) {
  std::string out;
  for (VertexId v : detail::vertices_by_name(h)) {
    const auto& n = h.name(v);
    if (project && std::string_view(n).substr(0, kReservedPrefix.size()) == kReservedPrefix) continue;
    if (!out.empty()) out += ' ';
    out += n;
    out += a[v] ? "=1" : "=0";
  }
  return out;
}

}  // namespace hyc
