#pragma once

#include <array>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "multisym/kform.hpp"

namespace multisym {

struct ParsedTerm {
  int line;
  Rational coeff;
  std::array<int, 3> idx;
};

/// A parsed 3-form together with the term lines it came from. Duplicate
/// multi-indices are summed; an empty file yields the zero form.
struct FormFile {
  KForm form{3};
  std::vector<ParsedTerm> terms;
};

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

inline int parse_index(const std::string& s, int line) {
  if (s.size() != 1 || s[0] < '1' || s[0] > '9')
    throw ParseError(line, "bad index '" + s + "'");
  int v = s[0] - '0';
  if (v < 1 || v > 6) throw ParseError(line, "index out of range 1..6");
  return v;
}

}  // namespace detail

/// Grammar: '#' comment lines; term lines `<rational> <i> <j> <k>` with
/// rational `[-]int[/int]` and 1 <= i < j < k <= 6.
inline FormFile parse_3form(std::istream& in) {
  FormFile out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed = line;
    size_t first = trimmed.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (trimmed[first] == '#') continue;
    auto fields = detail::split_fields(trimmed);
    if (fields.size() != 4)
      throw ParseError(lineno, "expected `<rational> <i> <j> <k>`");
    ParsedTerm term;
    term.line = lineno;
    term.coeff = parse_rational(fields[0], lineno);
    for (int t = 0; t < 3; ++t) term.idx[t] = detail::parse_index(fields[1 + t], lineno);
    if (!(term.idx[0] < term.idx[1] && term.idx[1] < term.idx[2]))
      throw ParseError(lineno, "indices not strictly increasing");
    out.form.add_term(MultiIndex::of({term.idx[0], term.idx[1], term.idx[2]}),
                      Scalar(term.coeff));
    out.terms.push_back(std::move(term));
  }
  return out;
}

/// Theta override file: a single term `<rational> 1 2 3 4 5 6`.
inline KForm parse_theta(std::istream& in) {
  std::string line;
  int lineno = 0;
  KForm theta(6);
  bool seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (seen) throw ParseError(lineno, "theta file must contain a single term");
    auto fields = detail::split_fields(line);
    if (fields.size() != 7) throw ParseError(lineno, "expected `<rational> 1 2 3 4 5 6`");
    Rational c = parse_rational(fields[0], lineno);
    for (int t = 0; t < 6; ++t)
      if (detail::parse_index(fields[1 + t], lineno) != t + 1)
        throw ParseError(lineno, "theta indices must be 1 2 3 4 5 6");
    if (c == 0) throw ParseError(lineno, "theta must be nonzero");
    theta.add_term(MultiIndex::of({1, 2, 3, 4, 5, 6}), Scalar(c));
    seen = true;
  }
  if (!seen) throw ParseError(lineno == 0 ? 1 : lineno, "theta file is empty");
  return theta;
}

/// Renders a rational 3-form in the input grammar; re-parsing yields an
/// equal form.
inline std::string emit_form_text(const KForm& f, const std::string& header = "") {
  std::string out;
  if (!header.empty()) out += "# " + header + "\n";
  for (const auto& [m, c] : f.coeffs()) {
    out += rational_str(c.rat());
    for (uint8_t t = 0; t < m.len; ++t) out += " " + std::to_string(m.idx[t]);
    out += "\n";
  }
  return out;
}

}  // namespace multisym
