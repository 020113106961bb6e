#pragma once

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <map>
#include <vector>

#include "multisym/linmap.hpp"

namespace multisym {

/// Strictly increasing tuple of indices from 1..6; the basis monomial
/// alpha_{i1} ^ ... ^ alpha_{ik} of grade k.
struct MultiIndex {
  uint8_t len = 0;
  std::array<uint8_t, 6> idx{};

  static MultiIndex of(std::initializer_list<int> is) {
    MultiIndex m;
    for (int i : is) {
      if (i < 1 || i > 6) throw PreconditionError("index out of range 1..6");
      if (m.len > 0 && m.idx[m.len - 1] >= i)
        throw PreconditionError("indices not strictly increasing");
      m.idx[m.len++] = static_cast<uint8_t>(i);
    }
    return m;
  }

  bool contains(uint8_t i) const {
    for (uint8_t t = 0; t < len; ++t)
      if (idx[t] == i) return true;
    return false;
  }

  MultiIndex erased(uint8_t pos) const {
    MultiIndex m;
    m.len = len - 1;
    for (uint8_t t = 0, o = 0; t < len; ++t)
      if (t != pos) m.idx[o++] = idx[t];
    return m;
  }

  MultiIndex complement() const {
    MultiIndex m;
    for (uint8_t i = 1; i <= 6; ++i)
      if (!contains(i)) m.idx[m.len++] = i;
    return m;
  }

  friend auto operator<=>(const MultiIndex& x, const MultiIndex& y) {
    if (auto c = x.len <=> y.len; c != 0) return c;
    for (uint8_t t = 0; t < x.len; ++t)
      if (auto c = x.idx[t] <=> y.idx[t]; c != 0) return c;
    return std::strong_ordering::equal;
  }
  friend bool operator==(const MultiIndex& x, const MultiIndex& y) {
    return (x <=> y) == 0;
  }
};

/// All grade-k multi-indices in lexicographic order. This order fixes the
/// coordinates of every operator matrix in the library.
inline const std::vector<MultiIndex>& grade_indices(int k) {
  static const std::array<std::vector<MultiIndex>, 7> table = [] {
    std::array<std::vector<MultiIndex>, 7> t;
    for (int g = 0; g <= 6; ++g) {
      std::vector<int> pick(g);
      std::vector<MultiIndex> out;
      auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == g) {
          MultiIndex m;
          m.len = static_cast<uint8_t>(g);
          for (int i = 0; i < g; ++i) m.idx[i] = static_cast<uint8_t>(pick[i]);
          out.push_back(m);
          return;
        }
        for (int i = start; i <= 6; ++i) {
          pick[depth] = i;
          self(self, i + 1, depth + 1);
        }
      };
      rec(rec, 1, 0);
      t[g] = std::move(out);
    }
    return t;
  }();
  if (k < 0 || k > 6) throw PreconditionError("grade outside 0..6");
  return table[k];
}

/// Sign of merging two disjoint increasing tuples into one increasing
/// tuple; 0 when they share an index.
inline int merge_sign(const MultiIndex& a, const MultiIndex& b, MultiIndex& out) {
  int inversions = 0;
  uint8_t ia = 0, ib = 0;
  out.len = 0;
  while (ia < a.len || ib < b.len) {
    if (ib == b.len || (ia < a.len && a.idx[ia] < b.idx[ib])) {
      out.idx[out.len++] = a.idx[ia++];
    } else if (ia == a.len || b.idx[ib] < a.idx[ia]) {
      inversions += a.len - ia;
      out.idx[out.len++] = b.idx[ib++];
    } else {
      return 0;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

/// Alternating k-form on the 6-space with exact coefficients over the
/// lexicographic monomial basis. Zero coefficients are never stored.
class KForm {
 public:
  explicit KForm(int grade) : grade_(grade) {
    if (grade < 0 || grade > 6) throw PreconditionError("grade outside 0..6");
  }

  static KForm monomial(std::initializer_list<int> is, Scalar c = Scalar(1)) {
    KForm f(static_cast<int>(is.size()));
    f.add_term(MultiIndex::of(is), std::move(c));
    return f;
  }

  int grade() const { return grade_; }
  const std::map<MultiIndex, Scalar>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  Scalar coeff(const MultiIndex& m) const {
    auto it = c_.find(m);
    return it == c_.end() ? Scalar(0) : it->second;
  }

  void add_term(const MultiIndex& m, const Scalar& c) {
    if (m.len != grade_) throw PreconditionError("multi-index length does not match grade");
    if (c.is_zero()) return;
    auto [it, inserted] = c_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  friend KForm operator+(const KForm& x, const KForm& y) {
    if (x.grade_ != y.grade_) throw PreconditionError("grade mismatch in sum");
    KForm r = x;
    for (const auto& [m, c] : y.c_) r.add_term(m, c);
    return r;
  }
  friend KForm operator-(const KForm& x, const KForm& y) {
    if (x.grade_ != y.grade_) throw PreconditionError("grade mismatch in difference");
    KForm r = x;
    for (const auto& [m, c] : y.c_) r.add_term(m, -c);
    return r;
  }
  friend KForm operator*(const Scalar& s, const KForm& x) {
    KForm r(x.grade_);
    if (s.is_zero()) return r;
    for (const auto& [m, c] : x.c_) r.c_.emplace(m, s * c);
    return r;
  }
  KForm operator-() const { return Scalar(-1) * *this; }

  friend bool operator==(const KForm& x, const KForm& y) {
    return x.grade_ == y.grade_ && x.c_ == y.c_;
  }
  friend bool operator!=(const KForm& x, const KForm& y) { return !(x == y); }

  /// Coefficients over the lexicographic grade basis.
  std::vector<Scalar> coordinates() const {
    const auto& basis = grade_indices(grade_);
    std::vector<Scalar> v(basis.size());
    for (size_t i = 0; i < basis.size(); ++i) v[i] = coeff(basis[i]);
    return v;
  }

  static KForm from_coordinates(int grade, const std::vector<Scalar>& v) {
    const auto& basis = grade_indices(grade);
    if (v.size() != basis.size()) throw PreconditionError("coordinate length mismatch");
    KForm f(grade);
    for (size_t i = 0; i < basis.size(); ++i) f.add_term(basis[i], v[i]);
    return f;
  }

 private:
  int grade_;
  std::map<MultiIndex, Scalar> c_;
};

/// Graded-anticommutative exterior product; rejects results above grade 6.
inline KForm wedge(const KForm& a, const KForm& b) {
  if (a.grade() + b.grade() > 6)
    throw PreconditionError("wedge grade overflow");
  KForm r(a.grade() + b.grade());
  MultiIndex merged;
  for (const auto& [ma, ca] : a.coeffs())
    for (const auto& [mb, cb] : b.coeffs()) {
      int s = merge_sign(ma, mb, merged);
      if (s == 0) continue;
      r.add_term(merged, s == 1 ? ca * cb : -(ca * cb));
    }
  return r;
}

/// Interior product (contraction): inserts v into the first slot.
inline KForm interior(const Vec6& v, const KForm& a) {
  if (a.grade() < 1) throw PreconditionError("interior product needs grade >= 1");
  KForm r(a.grade() - 1);
  for (const auto& [m, c] : a.coeffs())
    for (uint8_t t = 0; t < m.len; ++t) {
      const Scalar& vi = v[m.idx[t] - 1];
      if (vi.is_zero()) continue;
      Scalar term = vi * c;
      r.add_term(m.erased(t), t % 2 == 0 ? term : -term);
    }
  return r;
}

/// Evaluates a k-form on k vectors (determinant convention).
inline Scalar eval(const KForm& a, const std::vector<Vec6>& vs) {
  if (static_cast<int>(vs.size()) != a.grade())
    throw PreconditionError("evaluation arity must equal the grade");
  if (a.grade() == 0) {
    MultiIndex empty;
    return a.coeff(empty);
  }
  // det of the k x k minor picked by each monomial, by Laplace expansion
  Scalar total(0);
  const int k = a.grade();
  for (const auto& [m, c] : a.coeffs()) {
    // rows: indices of m, cols: vectors
    auto det = [&](auto&& self, std::vector<uint8_t> rows, size_t col) -> Scalar {
      if (rows.size() == 1) return vs[col][rows[0] - 1];
      Scalar d(0);
      for (size_t t = 0; t < rows.size(); ++t) {
        const Scalar& pivot = vs[col][rows[t] - 1];
        if (pivot.is_zero()) continue;
        std::vector<uint8_t> rest;
        rest.reserve(rows.size() - 1);
        for (size_t u = 0; u < rows.size(); ++u)
          if (u != t) rest.push_back(rows[u]);
        Scalar sub = pivot * self(self, std::move(rest), col + 1);
        d += (t % 2 == 0) ? sub : -sub;
      }
      return d;
    };
    std::vector<uint8_t> rows(m.idx.begin(), m.idx.begin() + m.len);
    total += c * det(det, std::move(rows), vs.size() - k);
  }
  return total;
}

inline Scalar eval(const KForm& a, const Vec6& v1, const Vec6& v2, const Vec6& v3) {
  return eval(a, std::vector<Vec6>{v1, v2, v3});
}

/// Pullback g*a with (g*a)(v1..vk) = a(g v1, .., g vk). Contravariant:
/// pullback(g*h, a) = pullback(h, pullback(g, a)).
inline KForm pullback(const LinMap& g, const KForm& a) {
  KForm r(a.grade());
  for (const auto& [m, c] : a.coeffs()) {
    KForm term(0);
    term.add_term(MultiIndex{}, Scalar(1));
    for (uint8_t t = 0; t < m.len; ++t) {
      KForm one(1);
      for (size_t j = 0; j < kDim; ++j) {
        const Scalar& e = g.at(m.idx[t] - 1, j);
        if (!e.is_zero()) one.add_term(MultiIndex::of({static_cast<int>(j + 1)}), e);
      }
      term = wedge(term, one);
    }
    r = r + c * term;
  }
  return r;
}

/// Derivation-style insertion of A into one argument slot at a time:
/// (D_A a)(v1..vk) = sum_i a(v1, .., A v_i, .., vk).
inline KForm insertion_derivation(const LinMap& a_map, const KForm& a) {
  KForm r(a.grade());
  for (const auto& [m, c] : a.coeffs())
    for (uint8_t t = 0; t < m.len; ++t) {
      KForm term(0);
      term.add_term(MultiIndex{}, Scalar(1));
      for (uint8_t u = 0; u < m.len; ++u) {
        KForm one(1);
        if (u == t) {
          for (size_t j = 0; j < kDim; ++j) {
            const Scalar& e = a_map.at(m.idx[u] - 1, j);
            if (!e.is_zero()) one.add_term(MultiIndex::of({static_cast<int>(j + 1)}), e);
          }
        } else {
          one.add_term(MultiIndex::of({static_cast<int>(m.idx[u])}), Scalar(1));
        }
        term = wedge(term, one);
      }
      r = r + c * term;
    }
  return r;
}

/// Matrix of a linear operator on the grade-k space in lexicographic
/// coordinates; column j is the image of the j-th basis monomial.
template <typename Fn>
Matrix operator_matrix(int grade, Fn&& op) {
  const auto& basis = grade_indices(grade);
  Matrix m(basis.size(), basis.size());
  for (size_t j = 0; j < basis.size(); ++j) {
    KForm b(grade);
    b.add_term(basis[j], Scalar(1));
    KForm img = op(b);
    if (img.grade() != grade) throw PreconditionError("operator must preserve grade");
    for (const auto& [mi, c] : img.coeffs()) {
      size_t i = std::lower_bound(basis.begin(), basis.end(), mi) - basis.begin();
      m.at(i, j) = c;
    }
  }
  return m;
}

}  // namespace multisym
