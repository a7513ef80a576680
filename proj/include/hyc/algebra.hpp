#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hyc/error.hpp"
#include "hyc/hypergraph.hpp"
#include "hyc/linalg.hpp"
#include "hyc/rational.hpp"
#include "hyc/representation.hpp"

namespace hyc {

using Word = std::vector<VertexId>;

// Drops one of two equal neighbours; two distinct co-edge neighbours kill the
// word. nullopt stands for ZERO.
inline std::optional<Word> reduce_word(const Hypergraph& h, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (VertexId v : w) {
    if (v >= h.num_vertices()) throw InvalidArgument("word letter " + std::to_string(v) + " is not a vertex");
    if (!out.empty()) {
      if (out.back() == v) continue;
      if (h.co_edge(out.back(), v)) return std::nullopt;
    }
    out.push_back(v);
  }
  return out;
}

inline std::optional<Word> reduce_word(const Hypergraph& h, const std::vector<std::string>& letters) {
  Word w;
  for (const auto& s : letters) {
    auto id = h.find(s);
    if (!id) throw InvalidArgument("unknown vertex '" + s + "'");
    w.push_back(*id);
  }
  return reduce_word(h, w);
}

inline Word reversed(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

inline Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

// Shorter words first, then lexicographic by vertex index.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Rational linear combination of words. Zero coefficients are never stored.
class StarPolynomial {
 public:
  using Terms = std::map<Word, Rational, WordLess>;

  StarPolynomial() = default;
  static StarPolynomial constant(const Rational& c) { return monomial({}, c); }
  static StarPolynomial monomial(Word w, const Rational& c = 1) {
    StarPolynomial p;
    p.add(std::move(w), c);
    return p;
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add(Word w, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(std::move(w), c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  StarPolynomial& operator+=(const StarPolynomial& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  StarPolynomial& operator-=(const StarPolynomial& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  StarPolynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, c] : terms_) c *= s;
    return *this;
  }

  friend StarPolynomial operator+(StarPolynomial a, const StarPolynomial& b) { return a += b; }
  friend StarPolynomial operator-(StarPolynomial a, const StarPolynomial& b) { return a -= b; }
  friend StarPolynomial operator*(StarPolynomial a, const Rational& s) { return a *= s; }
  friend StarPolynomial operator*(const Rational& s, StarPolynomial a) { return a *= s; }
  friend StarPolynomial operator*(const StarPolynomial& a, const StarPolynomial& b) {
    StarPolynomial out;
    for (const auto& [u, c] : a.terms_)
      for (const auto& [v, d] : b.terms_) out.add(concat(u, v), c * d);
    return out;
  }
  friend bool operator==(const StarPolynomial&, const StarPolynomial&) = default;

  StarPolynomial adjoint() const {
    StarPolynomial out;
    for (const auto& [w, c] : terms_) out.add(reversed(w), c);
    return out;
  }

 private:
  Terms terms_;
};

inline StarPolynomial reduce(const Hypergraph& h, const StarPolynomial& p) {
  StarPolynomial out;
  for (const auto& [w, c] : p.terms())
    if (auto r = reduce_word(h, w)) out.add(std::move(*r), c);
  return out;
}

namespace detail {

// Greedy longest match of vertex names separated by '.'.
inline Word split_word(const Hypergraph& h, std::string_view text) {
  Word w;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::optional<VertexId> best;
    std::size_t best_len = 0;
    for (VertexId v = 0; v < h.num_vertices(); ++v) {
      const auto& n = h.name(v);
      if (n.size() <= best_len || text.compare(pos, n.size(), n) != 0) continue;
      std::size_t end = pos + n.size();
      if (end != text.size() && text[end] != '.') continue;
      best = v;
      best_len = n.size();
    }
    if (!best) {
      auto dot = text.find('.', pos);
      throw InvalidArgument("unknown vertex '" + std::string(text.substr(pos, dot - pos)) + "'");
    }
    w.push_back(*best);
    pos += best_len;
    if (pos < text.size()) {
      ++pos;
      if (pos == text.size()) throw InvalidArgument("trailing '.' in word");
    }
  }
  return w;
}

inline bool is_number(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit((unsigned char)c) || c == '/' || c == '.'; });
}

}  // namespace detail

// Syntax: terms separated by whitespace-delimited '+' / '-'; a term is
// "[coef*]a.b.c" or a number. Example: "3/2*a.b.c + 1 - b".
inline StarPolynomial parse_polynomial(const Hypergraph& h, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tok;
  StarPolynomial p;
  int sign = 1;
  bool expect_term = true;
  bool any = false;
  while (in >> tok) {
    if (tok == "+" || tok == "-") {
      if (expect_term && any) throw InvalidArgument("operator '" + tok + "' without a term");
      sign = tok == "-" ? -1 : 1;
      expect_term = true;
      continue;
    }
    if (!expect_term) throw InvalidArgument("missing operator before '" + tok + "'");
    std::string_view t = tok;
    if (t.front() == '-') {
      sign = -sign;
      t.remove_prefix(1);
    }
    Rational coef = 1;
    Word w;
    auto star = t.find('*');
    if (star != std::string_view::npos) {
      auto c = t.substr(0, star);
      if (!detail::is_number(c)) throw InvalidArgument("bad coefficient '" + std::string(c) + "'");
      coef = parse_rational(c);
      w = detail::split_word(h, t.substr(star + 1));
    } else if (detail::is_number(t) && !h.find(t)) {
      coef = parse_rational(t);
    } else {
      w = detail::split_word(h, t);
    }
    p.add(std::move(w), sign * coef);
    sign = 1;
    expect_term = false;
    any = true;
  }
  if (expect_term && any) throw InvalidArgument("polynomial ends with an operator");
  return p;
}

inline std::string format_polynomial(const Hypergraph& h, const StarPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string word;
    for (std::size_t i = 0; i < w.size(); ++i) word += (i ? "." : "") + h.name(w[i]);
    if (w.empty()) out += a.get_str();
    else if (a == 1) out += word;
    else out += a.get_str() + "*" + word;
  }
  return out;
}

// Sound rewriting: every word is reduced, and the designated (largest-named)
// vertex of each edge is replaced by 1 minus the rest of its edge. A vertex
// designated by several edges uses the first. The substitutes carry smaller
// names, so the process terminates. Not a canonical form.
inline StarPolynomial normalize(const Hypergraph& h, const StarPolynomial& p) {
  for (std::size_t e = 0; e < h.num_edges(); ++e)
    if (h.edge(e).empty()) return {};

  std::vector<std::optional<std::size_t>> designated(h.num_vertices());
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    const auto& edge = h.edge(e);
    VertexId top = *std::max_element(edge.begin(), edge.end(),
                                     [&](VertexId a, VertexId b) { return h.name(a) < h.name(b); });
    if (!designated[top]) designated[top] = e;
  }

  StarPolynomial cur = reduce(h, p);
  for (;;) {
    StarPolynomial next;
    bool changed = false;
    for (const auto& [w, c] : cur.terms()) {
      auto it = std::find_if(w.begin(), w.end(), [&](VertexId v) { return designated[v].has_value(); });
      if (it == w.end()) {
        next.add(w, c);
        continue;
      }
      changed = true;
      std::size_t i = it - w.begin();
      Word left(w.begin(), w.begin() + i), right(w.begin() + i + 1, w.end());
      if (auto r = reduce_word(h, concat(left, right))) next.add(std::move(*r), c);
      for (VertexId o : h.edge(*designated[*it])) {
        if (o == *it) continue;
        Word m = left;
        m.push_back(o);
        m.insert(m.end(), right.begin(), right.end());
        if (auto r = reduce_word(h, m)) next.add(std::move(*r), -c);
      }
    }
    cur = std::move(next);
    if (!changed) return cur;
  }
}

template <class T>
DenseMatrix<T> evaluate(const Hypergraph& h, const StarPolynomial& p, const Representation<T>& rep) {
  const std::size_t d = rep.dim;
  for (const auto& [v, m] : rep.mats)
    if (m.rows() != d || m.cols() != d)
      throw InvalidArgument("matrix for '" + v + "' is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                            ", expected " + std::to_string(d) + "x" + std::to_string(d));
  DenseMatrix<T> out(d, d);
  for (const auto& [w, c] : p.terms()) {
    DenseMatrix<T> term = DenseMatrix<T>::identity(d);
    for (VertexId v : w) term = term * rep.at(h.name(v));
    T coef;
    if constexpr (std::is_same_v<T, Rational>) coef = c;
    else coef = c.get_d();
    out += term * coef;
  }
  return out;
}

}  // namespace hyc
