#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "hyc/error.hpp"

namespace hyc {

using Rational = mpq_class;

// Accepts integers, "p/q" and plain decimals ("-0.125", "3e-2" is not
// accepted). Decimals are converted exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InvalidArgument("empty number");
  auto dot = s.find('.');
  try {
    if (dot == std::string::npos) {
      Rational r(s, 10);
      if (r.get_den() == 0) throw InvalidArgument("zero denominator in '" + s + "'");
      r.canonicalize();
      return r;
    }
    bool negative = false;
    std::size_t start = 0;
    if (s[0] == '-' || s[0] == '+') {
      negative = s[0] == '-';
      start = 1;
    }
    std::string int_part = s.substr(start, dot - start);
    std::string frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) throw InvalidArgument("bad number '" + s + "'");
    for (char c : int_part + frac_part)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw InvalidArgument("bad number '" + s + "'");
    mpz_class num(int_part.empty() ? std::string("0") : int_part + frac_part, 10);
    if (int_part.empty()) num = mpz_class(frac_part, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
    Rational r(num, den);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  } catch (const std::invalid_argument&) {
    throw InvalidArgument("bad number '" + s + "'");
  }
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace hyc
