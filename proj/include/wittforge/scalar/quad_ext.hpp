#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "wittforge/scalar/rational.hpp"

namespace wittforge {

/// Element a + b*sqrt(d) of the quadratic field Q(sqrt d).
///
/// The radicand d is part of the value's context. A value with d == 0 is a
/// plain rational and adopts the radicand of whatever it is combined with;
/// combining two values with different non-zero radicands is a
/// ContextMismatch.
class QuadExt {
 public:
  QuadExt() = default;
  template <std::integral I>
  QuadExt(I n) : a_(n) {}  // NOLINT(google-explicit-constructor)
  QuadExt(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QuadExt(Rational a, Rational b, long d);

  /// Accepts "a + b*sqrt(d)", "a - b*sqrt(d)" or a bare rational.
  static QuadExt parse(std::string_view text);

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt_part() const { return b_; }
  long radicand() const { return d_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }
  /// a^2 - d b^2
  Rational norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }
  QuadExt conjugate() const { return QuadExt(a_, -b_, d_); }

  std::string to_string() const;

  QuadExt& operator+=(const QuadExt& o);
  QuadExt& operator-=(const QuadExt& o);
  QuadExt& operator*=(const QuadExt& o);
  QuadExt& operator/=(const QuadExt& o);

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
  QuadExt operator-() const { return QuadExt(-a_, -b_, d_); }

  friend bool operator==(const QuadExt& x, const QuadExt& y);

 private:
  long join_radicand(const QuadExt& o) const;

  Rational a_;
  Rational b_;
  long d_ = 0;
};

std::ostream& operator<<(std::ostream& os, const QuadExt& q);

}  // namespace wittforge
