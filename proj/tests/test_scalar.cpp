#include <random>

#include "doctest.h"
#include "wittforge/scalar/linalg.hpp"
#include "wittforge/scalar/polynomial.hpp"

using namespace wittforge;

namespace {

using Poly = Polynomial<Rational>;

Poly random_poly(std::mt19937& rng, const SymbolContext& ctx, int max_terms, int max_degree) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> exp(0, max_degree);
  Poly p(ctx, Rational(0));
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Poly term(ctx, Rational(coeff(rng), den(rng)));
    for (std::size_t v = 0; v < ctx->size(); ++v) {
      const int e = exp(rng);
      for (int i = 0; i < e; ++i) term *= Poly::variable(ctx, static_cast<int>(v));
    }
    p += term;
  }
  return p;
}

}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7).to_string() == "0");
  CHECK(Rational(6, 4).to_string() == "3/2");
  CHECK(Rational::parse("-10/4") == Rational(-5, 2));
  CHECK_THROWS_AS(Rational(1) / Rational(0), DivisionByZero);
  CHECK_THROWS_AS(Rational(1, 0), DivisionByZero);
  CHECK_THROWS_AS(Rational::parse("1/x"), ParseError);
  CHECK(binomial(15, 7) == Rational(6435));
}

TEST_CASE("quadratic extension arithmetic") {
  const QuadExt a(Rational(7, 2), Rational(-1, 2), 19);
  const QuadExt b = a.conjugate();
  // (a + b sqrt d)(a - b sqrt d) = a^2 - d b^2 = 49/4 - 19/4
  CHECK(a * b == QuadExt(Rational(15, 2)));
  CHECK((a / a) == QuadExt(1));
  CHECK(a.to_string() == "7/2 - 1/2*sqrt(19)");
  CHECK(QuadExt::parse(a.to_string()) == a);
  CHECK(QuadExt::parse("-3 + 2*sqrt(19)") == QuadExt(Rational(-3), Rational(2), 19));
  CHECK_THROWS_AS(a / QuadExt(0), DivisionByZero);
  CHECK_THROWS_AS(a + QuadExt(Rational(0), Rational(1), 5), ContextMismatch);
  CHECK_THROWS_AS(QuadExt(Rational(1), Rational(1), 12), PreconditionError);
  // Rational values adopt the radicand they meet.
  CHECK((QuadExt(3) + a).radicand() == 19);
}

TEST_CASE("polynomial identities and canonical text") {
  const auto ctx = make_symbols({"k", "s"});
  const Poly k = Poly::variable(ctx, "k");
  const Poly s = Poly::variable(ctx, "s");
  CHECK((k + s) * (k - s) == k * k - s * s);
  const Poly p = Rational(3) * k * k * s - Poly(Rational(1, 2));
  CHECK(p.to_string() == "3*k^2*s - 1/2");
  CHECK(Poly::parse("3*k^2*s - 1/2", ctx) == p);
  CHECK(Poly::parse("-k + s^2", ctx) == s * s - k);
  CHECK(Poly().to_string() == "0");
  CHECK(Poly::parse("0", ctx).is_zero());
  CHECK_THROWS_AS(Poly::parse("3*x", ctx), ParseError);
}

TEST_CASE("specialize evaluates exactly and names missing symbols") {
  const auto ctx = make_symbols({"k", "s"});
  const Poly k = Poly::variable(ctx, "k");
  const Poly s = Poly::variable(ctx, "s");
  CHECK((k * k - s * s).specialize({{"k", Rational(3)}, {"s", Rational(1)}}) == Rational(8));
  CHECK(Poly(ctx, Rational(0)).specialize({}) == Rational(0));

  const auto ctx2 = make_symbols({"s", "alpha", "k"});
  const auto e = Polynomial<Rational>::parse("s + alpha*k", ctx2);
  CHECK(e.specialize({{"s", 1}, {"alpha", 3}, {"k", 2}}) == Rational(7));
  try {
    (void)e.specialize({{"s", 1}, {"k", 2}});
    FAIL("expected MissingSymbol");
  } catch (const MissingSymbol& err) {
    CHECK(err.symbol == "alpha");
  }
}

TEST_CASE("mixed symbol contexts are rejected") {
  const auto a = make_symbols({"k"});
  const auto b = make_symbols({"s"});
  CHECK_THROWS_AS(Poly::variable(a, "k") + Poly::variable(b, "s"), ContextMismatch);
  // Constants combine with anything.
  CHECK((Poly::variable(a, "k") + Poly(Rational(2))).to_string() == "k + 2");
}

TEST_CASE("polynomials over Q(sqrt 19)") {
  using QPoly = Polynomial<QuadExt>;
  const auto ctx = make_symbols({"k", "p"});
  const QuadExt alpha(Rational(7, 2), Rational(-1, 2), 19);
  const QPoly e = QPoly::variable(ctx, "p") + QPoly(alpha) * QPoly::variable(ctx, "k");
  CHECK(e.to_string() == "(7/2 - 1/2*sqrt(19))*k + p");
  CHECK(QPoly::parse(e.to_string(), ctx) == e);
}

TEST_CASE("ring axioms, specialization homomorphism, and text round trip on random samples") {
  std::mt19937 rng(20240611);
  const auto ctx = make_symbols({"k", "s", "p"});
  std::uniform_int_distribution<int> val(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const Poly a = random_poly(rng, ctx, 4, 2);
    const Poly b = random_poly(rng, ctx, 4, 2);
    const Poly c = random_poly(rng, ctx, 4, 2);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a - a == Poly());
    std::map<std::string, Rational, std::less<>> at{
        {"k", Rational(val(rng))}, {"s", Rational(val(rng), 2)}, {"p", Rational(val(rng))}};
    CHECK((a * b).specialize(at) == a.specialize(at) * b.specialize(at));
    CHECK((a + b).specialize(at) == a.specialize(at) + b.specialize(at));
    CHECK(Poly::parse(a.to_string(), ctx) == a);
    Poly renorm = a;
    renorm.normalize();
    CHECK(renorm == a);
  }
}

TEST_CASE("exact row reduction, solve and nullspace") {
  MatrixX<Rational> a(3, 4);
  a << 1, 2, 3, 4,
       2, 4, 6, 8,
       1, 0, 1, 0;
  const auto ech = row_reduce<Rational>(a, true);
  CHECK(ech.rank() == 2);
  CHECK(ech.pivots == std::vector<int>{0, 1});
  CHECK(multiply<Rational>(ech.transform, a) == ech.reduced);
  const auto ns = nullspace<Rational>(a);
  CHECK(ns.cols() == 2);
  CHECK(is_zero_matrix<Rational>(multiply<Rational>(a, ns)));

  VectorX<Rational> b(3);
  b << 10, 20, 2;
  const auto x = solve<Rational>(a, b);
  REQUIRE(x.has_value());
  CHECK(multiply<Rational>(a, *x) == b);
  b(1) = 21;
  CHECK_FALSE(solve<Rational>(a, b).has_value());

  MatrixX<QuadExt> q(2, 2);
  const QuadExt r(Rational(0), Rational(1), 19);
  q << 1, r, r, 1;
  const auto qi = inverse<QuadExt>(q);
  REQUIRE(qi.has_value());
  CHECK(multiply<QuadExt>(q, *qi) == identity_matrix<QuadExt>(2));
  CHECK_FALSE(inverse<Rational>(a.leftCols(3).topRows(3)).has_value());
}
