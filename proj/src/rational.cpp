#include "wittforge/scalar/rational.hpp"

#include <cctype>
#include <ostream>

#include "wittforge/error.hpp"

namespace wittforge {

Rational::Rational(long num, long den) {
  if (den == 0) throw DivisionByZero();
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero();
  v_ /= o.v_;
  return *this;
}

long Rational::to_long() const {
  if (!is_integer() || !v_.get_num().fits_slong_p())
    throw Error("rational " + to_string() + " is not a machine integer");
  return v_.get_num().get_si();
}

std::string Rational::to_string() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num)) throw ParseError("bad rational literal '" + std::string(text) + "'");
  mpz_class n(std::string(num), 10);
  if (slash == std::string_view::npos) return Rational(mpq_class(n));
  const std::string_view den = text.substr(slash + 1);
  if (!is_integer_literal(den) || den[0] == '-')
    throw ParseError("bad rational literal '" + std::string(text) + "'");
  mpz_class d(std::string(den), 10);
  if (d == 0) throw DivisionByZero();
  return Rational(mpq_class(n, d));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational binomial(long n, long k) {
  if (k < 0 || k > n) return Rational(0);
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(mpq_class(out));
}

}  // namespace wittforge
