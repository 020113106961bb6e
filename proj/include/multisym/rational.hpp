#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <utility>

#include "multisym/errors.hpp"

namespace multisym {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string rational_str(const Rational& r) { return r.str(); }

/// Parses `[-]int[/int]`. No whitespace, no leading '+', denominator > 0.
inline Rational parse_rational(const std::string& s, int line = 0) {
  auto fail = [&](const char* why) -> Rational {
    throw ParseError(line, std::string("malformed rational '") + s + "': " + why);
  };
  if (s.empty()) return fail("empty");
  size_t pos = 0;
  if (s[pos] == '-') ++pos;
  size_t num_begin = pos;
  while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
  if (pos == num_begin) return fail("missing numerator digits");
  Int num(s.substr(0, pos));
  Int den = 1;
  if (pos < s.size()) {
    if (s[pos] != '/') return fail("unexpected character");
    ++pos;
    size_t den_begin = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == den_begin || pos != s.size()) return fail("bad denominator");
    den = Int(s.substr(den_begin));
    if (den == 0) return fail("zero denominator");
  }
  return Rational(num, den);
}

/// Writes n > 0 as s^2 * d with d squarefree. Trial division up to a fixed
/// bound plus a perfect-square check on the cofactor; prime factors above
/// the bound whose square divides n are not split further.
inline std::pair<Int, Int> square_part(Int n) {
  if (n <= 0) throw PreconditionError("square_part requires a positive integer");
  Int s = 1, d = 1;
  Int m = n;
  for (Int p = 2; p <= 100000 && p * p <= m; ++p) {
    if (m % p != 0) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) s *= p;
    if (e % 2 == 1) d *= p;
  }
  if (m > 1) {
    Int r = boost::multiprecision::sqrt(m);
    if (r * r == m) {
      s *= r;
    } else {
      d *= m;
    }
  }
  return {s, d};
}

}  // namespace multisym
