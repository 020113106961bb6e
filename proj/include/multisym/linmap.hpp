#pragma once

#include <array>

#include "multisym/matrix.hpp"

namespace multisym {

inline constexpr size_t kDim = 6;

using Vec6 = std::array<Scalar, kDim>;

inline Vec6 basis_vector(size_t i) {
  Vec6 v{};
  v[i] = Scalar(1);
  return v;
}

inline Vec6 operator+(const Vec6& x, const Vec6& y) {
  Vec6 r;
  for (size_t i = 0; i < kDim; ++i) r[i] = x[i] + y[i];
  return r;
}

inline Vec6 operator*(const Scalar& s, const Vec6& x) {
  Vec6 r;
  for (size_t i = 0; i < kDim; ++i) r[i] = s * x[i];
  return r;
}

inline bool is_zero(const Vec6& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

/// Endomorphism of the 6-space. Column j is the image of basis vector e_j.
class LinMap {
 public:
  LinMap() : m_(kDim, kDim) {}
  explicit LinMap(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != kDim || m_.cols() != kDim)
      throw PreconditionError("LinMap requires a 6x6 matrix");
  }

  static LinMap identity() { return LinMap(Matrix::identity(kDim)); }

  const Matrix& mat() const { return m_; }
  Scalar& at(size_t r, size_t c) { return m_.at(r, c); }
  const Scalar& at(size_t r, size_t c) const { return m_.at(r, c); }

  Vec6 apply(const Vec6& v) const {
    Vec6 r{};
    for (size_t i = 0; i < kDim; ++i)
      for (size_t j = 0; j < kDim; ++j)
        if (!m_.at(i, j).is_zero() && !v[j].is_zero()) r[i] += m_.at(i, j) * v[j];
    return r;
  }

  Vec6 column(size_t j) const {
    Vec6 r{};
    for (size_t i = 0; i < kDim; ++i) r[i] = m_.at(i, j);
    return r;
  }
  void set_column(size_t j, const Vec6& v) {
    for (size_t i = 0; i < kDim; ++i) m_.at(i, j) = v[i];
  }

  friend LinMap operator*(const LinMap& x, const LinMap& y) { return LinMap(x.m_ * y.m_); }
  friend LinMap operator+(const LinMap& x, const LinMap& y) { return LinMap(x.m_ + y.m_); }
  friend LinMap operator-(const LinMap& x, const LinMap& y) { return LinMap(x.m_ - y.m_); }
  friend LinMap operator*(const Scalar& s, const LinMap& y) { return LinMap(s * y.m_); }
  LinMap operator-() const { return Scalar(-1) * *this; }

  friend bool operator==(const LinMap& x, const LinMap& y) { return x.m_ == y.m_; }
  friend bool operator!=(const LinMap& x, const LinMap& y) { return !(x == y); }

  bool is_zero() const { return m_.is_zero(); }

  LinMap inversed() const { return LinMap(inverse(m_)); }

  /// Column space, canonical basis.
  Subspace image() const { return subspace_from_rows(m_.transposed()); }
  Subspace kernel() const { return Subspace{kernel_basis(m_)}; }

 private:
  Matrix m_;
};

}  // namespace multisym
