#include "wittforge/scalar/quad_ext.hpp"

#include <ostream>

#include "wittforge/error.hpp"

namespace wittforge {

namespace {

bool square_free(long d) {
  for (long p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace

QuadExt::QuadExt(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (d_ != 0 && (d_ < 2 || !square_free(d_)))
    throw PreconditionError("radicand must be a square-free integer > 1, got " + std::to_string(d_));
  if (d_ == 0 && !b_.is_zero()) throw PreconditionError("sqrt part requires a radicand");
}

long QuadExt::join_radicand(const QuadExt& o) const {
  if (d_ == o.d_ || o.d_ == 0) return d_;
  if (d_ == 0) return o.d_;
  throw ContextMismatch("quadratic extensions with radicands " + std::to_string(d_) + " and " +
                        std::to_string(o.d_));
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
  d_ = join_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
  d_ = join_radicand(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
  d_ = join_radicand(o);
  Rational a = a_ * o.a_ + Rational(d_) * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
  if (o.is_zero()) throw DivisionByZero();
  d_ = join_radicand(o);
  const Rational n = o.norm();
  QuadExt inv(o.a_ / n, -o.b_ / n, o.d_);
  return *this *= inv;
}

bool operator==(const QuadExt& x, const QuadExt& y) {
  if (x.d_ != y.d_ && x.d_ != 0 && y.d_ != 0) {
    // Different fields only share their rational elements.
    return x.b_.is_zero() && y.b_.is_zero() && x.a_ == y.a_;
  }
  return x.a_ == y.a_ && x.b_ == y.b_;
}

std::string QuadExt::to_string() const {
  if (d_ == 0) return a_.to_string();
  const bool neg = b_.sign() < 0;
  return a_.to_string() + (neg ? " - " : " + ") + (neg ? -b_ : b_).to_string() + "*sqrt(" +
         std::to_string(d_) + ")";
}

QuadExt QuadExt::parse(std::string_view text) {
  text = trim(text);
  const auto root = text.find("*sqrt(");
  if (root == std::string_view::npos) return QuadExt(Rational::parse(text));
  if (text.back() != ')') throw ParseError("bad quadratic literal '" + std::string(text) + "'");
  const std::string_view radicand = text.substr(root + 6, text.size() - root - 7);
  const long d = Rational::parse(radicand).to_long();
  // Split "a + b" / "a - b" at the last binary operator before the root.
  const std::string_view head = text.substr(0, root);
  std::size_t split = std::string_view::npos;
  for (std::size_t i = head.size(); i-- > 1;) {
    if ((head[i] == '+' || head[i] == '-') && !trim(head.substr(0, i)).empty()) {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos)
    throw ParseError("bad quadratic literal '" + std::string(text) + "'");
  const Rational a = Rational::parse(trim(head.substr(0, split)));
  Rational b = Rational::parse(trim(head.substr(split + 1)));
  if (head[split] == '-') b = -b;
  return QuadExt(a, b, d);
}

std::ostream& operator<<(std::ostream& os, const QuadExt& q) { return os << q.to_string(); }

}  // namespace wittforge
