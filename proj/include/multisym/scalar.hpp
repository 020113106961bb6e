#pragma once

#include <cstdint>
#include <string>

#include "multisym/rational.hpp"

namespace multisym {

/// Exact number a + b*sqrt(d) with a, b rational and d a squarefree
/// integer > 1, or a plain rational when b = 0 (then d = 0). All scalars
/// mixed in one expression must agree on d; mixing distinct extensions
/// is rejected.
class Scalar {
 public:
  Scalar() : a_(0), b_(0), d_(0) {}
  Scalar(int v) : a_(v), b_(0), d_(0) {}          // NOLINT: implicit by design
  Scalar(Rational v) : a_(std::move(v)), b_(0), d_(0) {}  // NOLINT
  Scalar(Rational a, Rational b, std::int64_t d)
      : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (b_ == 0) d_ = 0;
    if (d_ != 0 && d_ < 2)
      throw PreconditionError("quadratic extension requires d >= 2");
  }

  /// sqrt(r) for rational r >= 0, with d normalized to the squarefree part
  /// of numerator(r) * denominator(r).
  static Scalar sqrt_of(const Rational& r) {
    if (r < 0) throw PreconditionError("sqrt of a negative rational");
    if (r == 0) return Scalar(0);
    Int n = boost::multiprecision::numerator(r) * boost::multiprecision::denominator(r);
    auto [s, d] = square_part(n);
    Rational coeff(s, boost::multiprecision::denominator(r));
    if (d == 1) return Scalar(coeff);
    return Scalar(Rational(0), coeff, static_cast<std::int64_t>(d));
  }

  const Rational& rat_part() const { return a_; }
  const Rational& ext_part() const { return b_; }
  std::int64_t ext_d() const { return d_; }
  bool is_rational() const { return d_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  /// Plain-rational value; rejects genuinely extended scalars.
  const Rational& rat() const {
    if (!is_rational()) throw PreconditionError("scalar is not rational");
    return a_;
  }

  friend Scalar operator+(const Scalar& x, const Scalar& y) {
    std::int64_t d = join(x, y);
    return Scalar(x.a_ + y.a_, x.b_ + y.b_, d);
  }
  friend Scalar operator-(const Scalar& x, const Scalar& y) {
    std::int64_t d = join(x, y);
    return Scalar(x.a_ - y.a_, x.b_ - y.b_, d);
  }
  Scalar operator-() const { return Scalar(-a_, -b_, d_); }
  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    std::int64_t d = join(x, y);
    return Scalar(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }

  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }

  Scalar inverse() const {
    if (is_zero()) throw PreconditionError("division by zero");
    if (d_ == 0) return Scalar(1 / a_);
    Rational n = a_ * a_ - b_ * b_ * d_;  // nonzero: d is not a rational square
    return Scalar(a_ / n, -b_ / n, d_);
  }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
  }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

  /// Sign as a real number (-1, 0, +1); d > 0 makes the embedding real.
  int sign() const {
    int sa = a_ == 0 ? 0 : (a_ > 0 ? 1 : -1);
    if (d_ == 0 || b_ == 0) return sa;
    int sb = b_ > 0 ? 1 : -1;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    Rational a2 = a_ * a_, b2d = b_ * b_ * d_;
    if (a2 == b2d)
      throw InternalInvariantError("a^2 = d b^2 with d not a square");
    return a2 > b2d ? sa : sb;
  }

  friend bool operator<(const Scalar& x, const Scalar& y) { return (x - y).sign() < 0; }
  friend bool operator>(const Scalar& x, const Scalar& y) { return y < x; }
  friend bool operator<=(const Scalar& x, const Scalar& y) { return !(y < x); }
  friend bool operator>=(const Scalar& x, const Scalar& y) { return !(x < y); }

  /// Canonical string: "p/q" when rational, "p/q+r/s√d" otherwise.
  std::string str() const {
    if (d_ == 0) return rational_str(a_);
    std::string out = rational_str(a_);
    if (b_ < 0) {
      out += "-" + rational_str(-b_);
    } else {
      out += "+" + rational_str(b_);
    }
    out += "√" + std::to_string(d_);
    return out;
  }

 private:
  static std::int64_t join(const Scalar& x, const Scalar& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0 || x.d_ == y.d_) return x.d_;
    throw PreconditionError("mixed quadratic extensions: sqrt(" +
                            std::to_string(x.d_) + ") vs sqrt(" +
                            std::to_string(y.d_) + ")");
  }

  Rational a_, b_;
  std::int64_t d_;
};

inline Scalar operator*(int x, const Scalar& y) { return Scalar(x) * y; }

}  // namespace multisym
