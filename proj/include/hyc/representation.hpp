#pragma once

#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <sstream>
#include <string>

#include "hyc/error.hpp"
#include "hyc/hg_io.hpp"
#include "hyc/linalg.hpp"
#include "hyc/rational.hpp"

namespace hyc {

// Assignment of a d x d real matrix to each vertex identifier.
template <class T>
struct Representation {
  std::size_t dim = 0;
  std::map<std::string, DenseMatrix<T>> mats;

  const DenseMatrix<T>& at(const std::string& v) const {
    auto it = mats.find(v);
    if (it == mats.end()) throw InvalidArgument("representation has no matrix for '" + v + "'");
    return it->second;
  }
};

inline Representation<double> to_double(const Representation<Rational>& r) {
  Representation<double> out;
  out.dim = r.dim;
  for (const auto& [v, m] : r.mats) {
    DenseMatrix<double> d(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) d(i, j) = m(i, j).get_d();
    out.mats.emplace(v, std::move(d));
  }
  return out;
}

// `.rep` format:
//   dim <d>
//   mat <vertex>
//   <d rows of d entries: integers, p/q or decimals>
inline Representation<Rational> parse_representation(std::istream& in) {
  Representation<Rational> r;
  std::string line;
  std::size_t lineno = 0;
  bool have_dim = false;
  std::string current;
  std::size_t row = 0;
  auto finish = [&](std::size_t l) {
    if (!current.empty() && row != r.dim)
      throw ParseError(l, 1, "matrix '" + current + "' has " + std::to_string(row) + " rows, expected " +
                                 std::to_string(r.dim));
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = detail::tokenize_line(line);
    if (tokens.empty()) continue;
    const auto& kw = tokens[0];
    if (kw.text == "dim") {
      if (have_dim) throw ParseError(lineno, kw.column, "'dim' given twice");
      if (tokens.size() != 2) throw ParseError(lineno, kw.column, "'dim' expects one integer");
      std::size_t d = 0;
      const auto& t = tokens[1].text;
      auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), d);
      if (ec != std::errc() || p != t.data() + t.size() || d == 0)
        throw ParseError(lineno, tokens[1].column, "dimension must be a positive integer");
      r.dim = d;
      have_dim = true;
    } else if (kw.text == "mat") {
      if (!have_dim) throw ParseError(lineno, kw.column, "'mat' before 'dim'");
      if (tokens.size() != 2) throw ParseError(lineno, kw.column, "'mat' expects one vertex");
      finish(lineno);
      current = tokens[1].text;
      if (r.mats.count(current)) throw ParseError(lineno, tokens[1].column, "matrix for '" + current + "' given twice");
      r.mats.emplace(current, DenseMatrix<Rational>(r.dim, r.dim));
      row = 0;
    } else {
      if (current.empty()) throw ParseError(lineno, kw.column, "expected 'dim' or 'mat', found '" + kw.text + "'");
      if (row == r.dim) throw ParseError(lineno, kw.column, "too many rows for '" + current + "'");
      if (tokens.size() != r.dim)
        throw ParseError(lineno, kw.column, "expected " + std::to_string(r.dim) + " entries, found " +
                                                std::to_string(tokens.size()));
      auto& m = r.mats.at(current);
      for (std::size_t j = 0; j < tokens.size(); ++j) {
        try {
          m(row, j) = parse_rational(tokens[j].text);
        } catch (const InvalidArgument& e) {
          throw ParseError(lineno, tokens[j].column, e.what());
        }
      }
      ++row;
    }
  }
  if (!have_dim) throw ParseError(lineno == 0 ? 1 : lineno, 1, "missing 'dim' line");
  finish(lineno);
  return r;
}

inline Representation<Rational> parse_representation(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_representation(in);
}

namespace detail {
inline std::string format_entry(const Rational& x) { return x.get_str(); }
inline std::string format_entry(double x) {
  if (x == 0) return "0";
  char buf[400];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  // The parser takes plain decimals only.
  if (s.find('e') != std::string::npos) {
    std::snprintf(buf, sizeof buf, "%.40f", x);
    s = buf;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
  }
  return s;
}
}  // namespace detail

template <class T>
std::string serialize_representation(const Representation<T>& r) {
  std::string out = "dim " + std::to_string(r.dim) + "\n";
  for (const auto& [v, m] : r.mats) {
    out += "mat " + v + "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j) out += ' ';
        out += detail::format_entry(m(i, j));
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace hyc
