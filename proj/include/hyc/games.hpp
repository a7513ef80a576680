#pragma once

#include <array>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "hyc/error.hpp"
#include "hyc/hg_io.hpp"
#include "hyc/hypergraph.hpp"
#include "hyc/transforms.hpp"

namespace hyc {

// Quadruple (x, y, a, b) of input and output indices.
using Quadruple = std::array<std::size_t, 4>;

// Two-player game with shared input set I and output set O; lambda is 0 on the
// forbidden quadruples and 1 elsewhere.
class SynchronousGame {
 public:
  SynchronousGame() = default;
  SynchronousGame(std::vector<std::string> inputs, std::vector<std::string> outputs)
      : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
    check_unique(inputs_, "input");
    check_unique(outputs_, "output");
    table_.assign(inputs_.size() * inputs_.size() * outputs_.size() * outputs_.size(), false);
  }

  const std::vector<std::string>& inputs() const noexcept { return inputs_; }
  const std::vector<std::string>& outputs() const noexcept { return outputs_; }
  const std::set<Quadruple>& forbidden() const noexcept { return forbidden_; }

  void forbid(std::size_t x, std::size_t y, std::size_t a, std::size_t b) {
    if (x >= inputs_.size() || y >= inputs_.size() || a >= outputs_.size() || b >= outputs_.size())
      throw InvalidArgument("quadruple out of range");
    forbidden_.insert({x, y, a, b});
    table_[index(x, y, a, b)] = true;
  }

  bool lambda(std::size_t x, std::size_t y, std::size_t a, std::size_t b) const { return !table_[index(x, y, a, b)]; }

  // Adds (x, x, a, b) for every x and a != b.
  void add_synchronicity() {
    for (std::size_t x = 0; x < inputs_.size(); ++x)
      for (std::size_t a = 0; a < outputs_.size(); ++a)
        for (std::size_t b = 0; b < outputs_.size(); ++b)
          if (a != b) forbid(x, x, a, b);
  }

 private:
  std::size_t index(std::size_t x, std::size_t y, std::size_t a, std::size_t b) const {
    const std::size_t ni = inputs_.size(), no = outputs_.size();
    return ((x * ni + y) * no + a) * no + b;
  }

  static void check_unique(const std::vector<std::string>& v, const char* what) {
    std::set<std::string> s(v.begin(), v.end());
    if (s.size() != v.size()) throw InvalidArgument(std::string("duplicate ") + what + " name");
    for (const auto& n : v)
      if (!is_valid_vertex_name(n)) throw InvalidArgument(std::string("invalid ") + what + " name '" + n + "'");
  }

  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::set<Quadruple> forbidden_;
  std::vector<bool> table_;
};

// Synchronicity violations, one message per offending quadruple.
inline std::vector<std::string> validate_game(const SynchronousGame& g) {
  std::vector<std::string> out;
  const auto& I = g.inputs();
  const auto& O = g.outputs();
  for (std::size_t x = 0; x < I.size(); ++x)
    for (std::size_t a = 0; a < O.size(); ++a)
      for (std::size_t b = 0; b < O.size(); ++b) {
        bool win = g.lambda(x, x, a, b);
        if (a == b && !win) out.push_back("(" + I[x] + "," + I[x] + "," + O[a] + "," + O[b] + ") forbidden");
        if (a != b && win) out.push_back("(" + I[x] + "," + I[x] + "," + O[a] + "," + O[b] + ") not forbidden");
      }
  return out;
}

struct GameParseOptions {
  bool auto_sync = false;
};

// `.game` format:
//   inputs x1 x2 ...
//   outputs a1 a2 ...
//   forbid x y a b
inline SynchronousGame parse_game(std::istream& in, GameParseOptions opts = {}) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::vector<std::string>> inputs, outputs;
  std::vector<std::pair<std::vector<detail::Token>, std::size_t>> forbids;
  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = detail::tokenize_line(line);
    if (tokens.empty()) continue;
    const auto& kw = tokens[0];
    auto names = [&] {
      std::vector<std::string> v;
      for (std::size_t i = 1; i < tokens.size(); ++i) v.push_back(tokens[i].text);
      return v;
    };
    if (kw.text == "inputs") {
      if (inputs) throw ParseError(lineno, kw.column, "'inputs' given twice");
      inputs = names();
    } else if (kw.text == "outputs") {
      if (outputs) throw ParseError(lineno, kw.column, "'outputs' given twice");
      outputs = names();
    } else if (kw.text == "forbid") {
      if (tokens.size() != 5) throw ParseError(lineno, kw.column, "'forbid' expects x y a b");
      forbids.emplace_back(tokens, lineno);
    } else {
      throw ParseError(lineno, kw.column, "expected 'inputs', 'outputs' or 'forbid', found '" + kw.text + "'");
    }
  }
  if (!inputs) throw ParseError(lineno == 0 ? 1 : lineno, 1, "missing 'inputs' line");
  if (!outputs) throw ParseError(lineno == 0 ? 1 : lineno, 1, "missing 'outputs' line");
  SynchronousGame g(*inputs, *outputs);
  auto lookup = [](const std::vector<std::string>& v, const detail::Token& t, std::size_t l) {
    auto it = std::find(v.begin(), v.end(), t.text);
    if (it == v.end()) throw ParseError(l, t.column, "unknown name '" + t.text + "'");
    return static_cast<std::size_t>(it - v.begin());
  };
  for (const auto& [t, l] : forbids)
    g.forbid(lookup(*inputs, t[1], l), lookup(*inputs, t[2], l), lookup(*outputs, t[3], l), lookup(*outputs, t[4], l));
  if (opts.auto_sync) g.add_synchronicity();
  return g;
}

inline SynchronousGame parse_game(std::string_view text, GameParseOptions opts = {}) {
  std::istringstream in{std::string(text)};
  return parse_game(in, opts);
}

inline std::string serialize_game(const SynchronousGame& g) {
  std::string out = "inputs";
  for (const auto& x : g.inputs()) out += " " + x;
  out += "\noutputs";
  for (const auto& a : g.outputs()) out += " " + a;
  out += "\n";
  for (const auto& [x, y, a, b] : g.forbidden())
    out += "forbid " + g.inputs()[x] + " " + g.inputs()[y] + " " + g.outputs()[a] + " " + g.outputs()[b] + "\n";
  return out;
}

inline std::string game_vertex_name(const SynchronousGame& g, std::size_t x, std::size_t a) {
  return "s_" + g.inputs()[x] + "_" + g.outputs()[a];
}

// Vertices s_x_a with one partition edge per input, plus one orthogonality
// gadget {u, s_x_a, s_y_b} per forbidden quadruple. (x,y,a,b) and (y,x,b,a)
// share a gadget; a forbidden (x,x,a,a) forces s_x_a = 0.
inline Hypergraph game_to_hypergraph(const SynchronousGame& g) {
  std::vector<std::vector<std::string>> edges;
  std::set<std::string> names;
  for (std::size_t x = 0; x < g.inputs().size(); ++x) {
    std::vector<std::string> e;
    for (std::size_t a = 0; a < g.outputs().size(); ++a) {
      e.push_back(game_vertex_name(g, x, a));
      if (!names.insert(e.back()).second) throw InvalidArgument("vertex name clash at '" + e.back() + "'");
    }
    edges.push_back(std::move(e));
  }
  Hypergraph base = g.outputs().empty() ? Hypergraph({}, std::vector<Edge>(g.inputs().size()))
                                        : Hypergraph::from_named_edges(edges);
  std::set<std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>>> seen;
  std::vector<Relation> rels, zeros;
  for (const auto& [x, y, a, b] : g.forbidden()) {
    std::pair<std::size_t, std::size_t> u{x, a}, w{y, b};
    if (w < u) std::swap(u, w);
    auto p = std::pair{u, w};
    if (!seen.insert(p).second) continue;
    if (p.first == p.second)
      zeros.push_back(Relation::zero(game_vertex_name(g, x, a)));
    else
      rels.push_back(Relation::orthogonal(game_vertex_name(g, x, a), game_vertex_name(g, y, b)));
  }
  rels.insert(rels.end(), zeros.begin(), zeros.end());
  return impose_relations(base, rels);
}

struct HypergraphGame {
  SynchronousGame game;
  Hypergraph reduct;                           // three_uniform(h)
  std::vector<std::array<VertexId, 3>> slots;  // slots[x][a] = vertex answered by output a on input x
};

// Game with three outputs whose perfect strategies are the exact-one
// assignments of h: inputs are the edges e1, e2, ... of three_uniform(h),
// output a on input x names the a-th vertex of that edge (identifier order),
// and (x, y, a, b) is forbidden when v_{x,a} = v_{y,b'} for some b' != b.
// Each such quadruple is forbidden together with its mirror (y, x, b, a): both
// encode the same orthogonality p_{x,a} p_{y,b} = 0, and lambda comes out
// symmetric.
inline HypergraphGame hypergraph_to_game(const Hypergraph& h) {
  HypergraphGame out;
  out.reduct = three_uniform(h);
  const Hypergraph& r = out.reduct;
  std::vector<std::string> inputs;
  for (std::size_t e = 0; e < r.num_edges(); ++e) {
    inputs.push_back("e" + std::to_string(e + 1));
    auto names = r.sorted_edge_names(e);
    out.slots.push_back({r.id(names[0]), r.id(names[1]), r.id(names[2])});
  }
  out.game = SynchronousGame(inputs, {"1", "2", "3"});
  for (std::size_t x = 0; x < inputs.size(); ++x)
    for (std::size_t y = 0; y < inputs.size(); ++y)
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t bp = 0; bp < 3; ++bp) {
          if (out.slots[x][a] != out.slots[y][bp]) continue;
          for (std::size_t b = 0; b < 3; ++b)
            if (b != bp) {
              out.game.forbid(x, y, a, b);
              out.game.forbid(y, x, b, a);
            }
        }
  return out;
}

// Output index per input.
using DeterministicStrategy = std::vector<std::size_t>;

struct StrategyOptions {
  std::size_t cap = 1'000'000;
  // Forward-checking search instead of plain enumeration of all |O|^|I| maps.
  bool propagate = false;
};

struct StrategyEnumeration {
  std::vector<DeterministicStrategy> strategies;
  bool cap_exceeded = false;
};

namespace detail {

inline bool strategy_wins(const SynchronousGame& g, const DeterministicStrategy& s) {
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = 0; y < s.size(); ++y)
      if (!g.lambda(x, y, s[x], s[y])) return false;
  return true;
}

class StrategySearch {
 public:
  StrategySearch(const SynchronousGame& g, std::size_t cap) : g_(g), cap_(cap) {}

  StrategyEnumeration run() {
    const std::size_t ni = g_.inputs().size(), no = g_.outputs().size();
    State s{std::vector<std::vector<char>>(ni, std::vector<char>(no, 1)), std::vector<long>(ni, -1)};
    for (std::size_t x = 0; x < ni; ++x)
      for (std::size_t a = 0; a < no; ++a)
        if (!g_.lambda(x, x, a, a)) s.domain[x][a] = 0;
    if (propagate_units(s)) search(s, 0);
    return std::move(out_);
  }

 private:
  struct State {
    std::vector<std::vector<char>> domain;
    std::vector<long> value;
  };

  // Fixes x = a and prunes the other inputs; false on a wipe-out.
  bool assign(State& s, std::size_t x, std::size_t a, std::vector<std::size_t>& units) {
    s.value[x] = static_cast<long>(a);
    const std::size_t no = g_.outputs().size();
    for (std::size_t y = 0; y < s.value.size(); ++y) {
      if (y == x) continue;
      if (s.value[y] >= 0) {
        auto b = static_cast<std::size_t>(s.value[y]);
        if (!g_.lambda(x, y, a, b) || !g_.lambda(y, x, b, a)) return false;
        continue;
      }
      std::size_t alive = 0;
      for (std::size_t b = 0; b < no; ++b) {
        if (!s.domain[y][b]) continue;
        if (!g_.lambda(x, y, a, b) || !g_.lambda(y, x, b, a)) s.domain[y][b] = 0;
        else ++alive;
      }
      if (alive == 0) return false;
      if (alive == 1) units.push_back(y);
    }
    return true;
  }

  bool propagate_units(State& s, std::vector<std::size_t> units = {}) {
    for (std::size_t y = 0; y < s.value.size(); ++y) {
      if (s.value[y] >= 0) continue;
      std::size_t alive = std::count(s.domain[y].begin(), s.domain[y].end(), 1);
      if (alive == 0) return false;
      if (alive == 1) units.push_back(y);
    }
    while (!units.empty()) {
      std::size_t y = units.back();
      units.pop_back();
      if (s.value[y] >= 0) continue;
      auto it = std::find(s.domain[y].begin(), s.domain[y].end(), 1);
      if (it == s.domain[y].end()) return false;
      if (!assign(s, y, static_cast<std::size_t>(it - s.domain[y].begin()), units)) return false;
    }
    return true;
  }

  // False once the cap is hit.
  bool search(const State& s, std::size_t from) {
    std::size_t x = from;
    while (x < s.value.size() && s.value[x] >= 0) ++x;
    if (x == s.value.size()) {
      if (out_.strategies.size() == cap_) {
        out_.cap_exceeded = true;
        return false;
      }
      DeterministicStrategy st;
      for (long v : s.value) st.push_back(static_cast<std::size_t>(v));
      out_.strategies.push_back(std::move(st));
      return true;
    }
    for (std::size_t a = 0; a < g_.outputs().size(); ++a) {
      if (!s.domain[x][a]) continue;
      State next = s;
      std::vector<std::size_t> units;
      if (assign(next, x, a, units) && propagate_units(next, std::move(units)) && !search(next, x + 1)) return false;
    }
    return true;
  }

  const SynchronousGame& g_;
  std::size_t cap_;
  StrategyEnumeration out_;
};

}  // namespace detail

// All perfect deterministic strategies in lexicographic order (input order,
// output order). Without propagation the |O|^|I| maps are enumerated, and a
// search space larger than the cap is refused up front.
inline StrategyEnumeration perfect_deterministic_strategies(const SynchronousGame& g, StrategyOptions opt = {}) {
  if (opt.propagate) return detail::StrategySearch(g, opt.cap).run();
  StrategyEnumeration out;
  const std::size_t ni = g.inputs().size(), no = g.outputs().size();
  double space = 1;
  for (std::size_t i = 0; i < ni; ++i) space *= static_cast<double>(no);
  if (space > static_cast<double>(opt.cap)) {
    out.cap_exceeded = true;
    return out;
  }
  if (no == 0 && ni > 0) return out;
  DeterministicStrategy s(ni, 0);
  for (;;) {
    if (detail::strategy_wins(g, s)) out.strategies.push_back(s);
    std::size_t k = ni;
    while (k > 0) {
      --k;
      if (++s[k] < no) break;
      s[k] = 0;
      if (k == 0) return out;
    }
    if (ni == 0) return out;
  }
}

}  // namespace hyc
