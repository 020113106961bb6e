#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "multisym/scalar.hpp"

namespace multisym {

/// Dense matrix of exact scalars. All eliminations below are exact; there
/// is no floating-point path anywhere in the library.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Scalar& at(size_t r, size_t c) { return e_[r * cols_ + c]; }
  const Scalar& at(size_t r, size_t c) const { return e_[r * cols_ + c]; }

  void swap_rows(size_t i, size_t j) {
    if (i == j) return;
    for (size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
  }

  std::vector<Scalar> row(size_t r) const {
    return std::vector<Scalar>(e_.begin() + r * cols_, e_.begin() + (r + 1) * cols_);
  }
  std::vector<Scalar> col(size_t c) const {
    std::vector<Scalar> v(rows_);
    for (size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
  }
  void set_row(size_t r, const std::vector<Scalar>& v) {
    for (size_t c = 0; c < cols_; ++c) at(r, c) = v[c];
  }
  void set_col(size_t c, const std::vector<Scalar>& v) {
    for (size_t r = 0; r < rows_; ++r) at(r, c) = v[r];
  }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.e_ == y.e_;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw PreconditionError("matrix shape mismatch in product");
    Matrix r(x.rows_, y.cols_);
    for (size_t i = 0; i < x.rows_; ++i)
      for (size_t k = 0; k < x.cols_; ++k) {
        const Scalar& xik = x.at(i, k);
        if (xik.is_zero()) continue;
        for (size_t j = 0; j < y.cols_; ++j) {
          const Scalar& ykj = y.at(k, j);
          if (!ykj.is_zero()) r.at(i, j) += xik * ykj;
        }
      }
    return r;
  }
  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw PreconditionError("matrix shape mismatch in sum");
    Matrix r = x;
    for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += y.e_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw PreconditionError("matrix shape mismatch in difference");
    Matrix r = x;
    for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] -= y.e_[i];
    return r;
  }
  friend Matrix operator*(const Scalar& s, const Matrix& y) {
    Matrix r = y;
    for (auto& x : r.e_) x *= s;
    return r;
  }

  Matrix transposed() const {
    Matrix r(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  /// Stacks rows of two matrices with equal column counts.
  static Matrix vstack(const Matrix& top, const Matrix& bottom) {
    if (top.cols_ != bottom.cols_ && top.rows_ != 0 && bottom.rows_ != 0)
      throw PreconditionError("vstack column mismatch");
    size_t cols = top.rows_ ? top.cols_ : bottom.cols_;
    Matrix r(top.rows_ + bottom.rows_, cols);
    for (size_t i = 0; i < top.rows_; ++i) r.set_row(i, top.row(i));
    for (size_t i = 0; i < bottom.rows_; ++i) r.set_row(top.rows_ + i, bottom.row(i));
    return r;
  }

 private:
  size_t rows_, cols_;
  std::vector<Scalar> e_;
};

struct Echelon {
  Matrix mat;                  // same shape as the input, trailing rows zero
  std::vector<size_t> pivots;  // pivot column per nonzero row
  size_t rank() const { return pivots.size(); }
};

namespace detail {

/// Multiplies each row by the lcm of its component denominators so the
/// fraction-free pass works on ring elements.
inline void clear_row_denominators(Matrix& m) {
  for (size_t i = 0; i < m.rows(); ++i) {
    Int l = 1;
    for (size_t j = 0; j < m.cols(); ++j) {
      const Scalar& s = m.at(i, j);
      l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(s.rat_part()));
      l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(s.ext_part()));
    }
    if (l != 1) {
      Scalar f{Rational(l)};
      for (size_t j = 0; j < m.cols(); ++j) m.at(i, j) *= f;
    }
  }
}

}  // namespace detail

/// Reduced row echelon form via Bareiss-style fraction-free forward
/// elimination followed by exact back substitution. The result is the
/// unique canonical representative of the row space.
inline Echelon reduced_echelon(Matrix m) {
  const size_t R = m.rows(), C = m.cols();
  detail::clear_row_denominators(m);
  std::vector<size_t> pivots;
  Scalar prev(1);
  size_t r = 0;
  for (size_t c = 0; c < C && r < R; ++c) {
    size_t pr = r;
    while (pr < R && m.at(pr, c).is_zero()) ++pr;
    if (pr == R) continue;
    m.swap_rows(r, pr);
    for (size_t i = r + 1; i < R; ++i) {
      for (size_t j = c + 1; j < C; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(r, c) - m.at(i, c) * m.at(r, j)) / prev;
      m.at(i, c) = Scalar(0);
    }
    prev = m.at(r, c);
    pivots.push_back(c);
    ++r;
  }
  for (size_t k = pivots.size(); k-- > 0;) {
    size_t pc = pivots[k];
    Scalar inv = m.at(k, pc).inverse();
    for (size_t j = pc; j < C; ++j) m.at(k, j) *= inv;
    for (size_t i = 0; i < k; ++i) {
      Scalar f = m.at(i, pc);
      if (f.is_zero()) continue;
      for (size_t j = pc; j < C; ++j) m.at(i, j) -= f * m.at(k, j);
    }
  }
  return {std::move(m), std::move(pivots)};
}

inline size_t rank(const Matrix& m) { return reduced_echelon(m).rank(); }

/// Nullspace basis in solved form: one row per free column, in free-column
/// order, with unit entry at that column and back-substituted pivot values.
inline Matrix kernel_basis_solved(const Matrix& m) {
  Echelon e = reduced_echelon(m);
  std::vector<size_t> free_cols;
  {
    size_t pi = 0;
    for (size_t c = 0; c < m.cols(); ++c) {
      if (pi < e.pivots.size() && e.pivots[pi] == c) {
        ++pi;
      } else {
        free_cols.push_back(c);
      }
    }
  }
  Matrix k(free_cols.size(), m.cols());
  for (size_t t = 0; t < free_cols.size(); ++t) {
    k.at(t, free_cols[t]) = Scalar(1);
    for (size_t ri = 0; ri < e.pivots.size(); ++ri)
      k.at(t, e.pivots[ri]) = -e.mat.at(ri, free_cols[t]);
  }
  return k;
}

/// Canonical (reduced-echelon) basis of the nullspace, one row per basis
/// vector. Zero rows means the kernel is trivial.
inline Matrix kernel_basis(const Matrix& m) {
  Echelon ke = reduced_echelon(kernel_basis_solved(m));
  Matrix out(ke.rank(), m.cols());
  for (size_t i = 0; i < ke.rank(); ++i) out.set_row(i, ke.mat.row(i));
  return out;
}

struct SolveResult {
  size_t rank = 0;
  bool consistent = false;
  Matrix solution;  // one particular solution per rhs column, when consistent
  Matrix kernel;    // canonical basis rows of the homogeneous solutions
  Matrix image;     // canonical basis rows of the column space
};

/// Exact solve of A x = b for every column b of rhs. Inconsistency is
/// reported separately from rank deficiency.
inline SolveResult linear_solve(const Matrix& a, const Matrix& rhs) {
  if (a.rows() != rhs.rows()) throw PreconditionError("solve shape mismatch");
  Matrix aug(a.rows(), a.cols() + rhs.cols());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    for (size_t j = 0; j < rhs.cols(); ++j) aug.at(i, a.cols() + j) = rhs.at(i, j);
  }
  Echelon e = reduced_echelon(aug);
  SolveResult res;
  res.consistent = true;
  for (size_t pi = 0; pi < e.pivots.size(); ++pi) {
    if (e.pivots[pi] < a.cols()) {
      ++res.rank;
    } else {
      res.consistent = false;
    }
  }
  res.kernel = kernel_basis(a);
  {
    Echelon im = reduced_echelon(a.transposed());
    res.image = Matrix(im.rank(), a.rows());
    for (size_t i = 0; i < im.rank(); ++i) res.image.set_row(i, im.mat.row(i));
  }
  if (res.consistent) {
    res.solution = Matrix(a.cols(), rhs.cols());
    for (size_t pi = 0; pi < e.pivots.size(); ++pi)
      for (size_t j = 0; j < rhs.cols(); ++j)
        res.solution.at(e.pivots[pi], j) = e.mat.at(pi, a.cols() + j);
  }
  return res;
}

inline Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("inverse of a non-square matrix");
  SolveResult s = linear_solve(m, Matrix::identity(m.rows()));
  if (!s.consistent || s.rank != m.rows())
    throw PreconditionError("matrix is singular");
  return s.solution;
}

/// Rowspace with the unique reduced-echelon basis as its representative.
struct Subspace {
  Matrix basis;  // dim x ambient, reduced echelon, no zero rows

  size_t dim() const { return basis.rows(); }
  size_t ambient() const { return basis.cols(); }

  friend bool operator==(const Subspace& x, const Subspace& y) {
    return x.basis == y.basis;
  }
  friend bool operator!=(const Subspace& x, const Subspace& y) { return !(x == y); }
};

inline Subspace subspace_from_rows(const Matrix& rows) {
  Echelon e = reduced_echelon(rows);
  Matrix b(e.rank(), rows.cols());
  for (size_t i = 0; i < e.rank(); ++i) b.set_row(i, e.mat.row(i));
  return Subspace{std::move(b)};
}

inline bool subspace_contains(const Subspace& space, const std::vector<Scalar>& v) {
  Matrix probe(space.dim() + 1, space.ambient());
  for (size_t i = 0; i < space.dim(); ++i) probe.set_row(i, space.basis.row(i));
  probe.set_row(space.dim(), v);
  return rank(probe) == space.dim();
}

inline bool subspace_contains(const Subspace& space, const Subspace& sub) {
  return rank(Matrix::vstack(space.basis, sub.basis)) == space.dim();
}

inline Subspace subspace_sum(const Subspace& x, const Subspace& y) {
  return subspace_from_rows(Matrix::vstack(x.basis, y.basis));
}

}  // namespace multisym
