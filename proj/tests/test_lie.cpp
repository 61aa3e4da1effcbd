#include <random>

#include "doctest.h"
#include "wittforge/lie/automorphism.hpp"

using namespace wittforge;

namespace {

using W1 = Rank1Algebra<Rational>;
using Wn = WnAlgebra<Rational>;
using WnP = WnAlgebra<PolyQ>;

LieElement<W1> e(const std::shared_ptr<const W1>& alg, std::int64_t k) {
  return LieElement<W1>::basis(alg, lattice_point({k}));
}

LieElement<Wn> td(const std::shared_ptr<const Wn>& alg, std::initializer_list<std::int64_t> r, int dir) {
  return LieElement<Wn>::basis(alg, {lattice_point(r), dir - 1});
}

std::vector<LieElement<Wn>> wn_box(const std::shared_ptr<const Wn>& alg, int radius) {
  std::vector<LieElement<Wn>> out;
  const int n = alg->n();
  std::vector<std::int64_t> r(n, -radius);
  while (true) {
    for (int a = 0; a < n; ++a) out.push_back(LieElement<Wn>::basis(alg, {lattice_point(r), a}));
    int i = 0;
    while (i < n && r[i] == radius) r[i++] = -radius;
    if (i == n) break;
    ++r[i];
  }
  return out;
}

IntMatrix mat2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  IntMatrix g(2, 2);
  g << a, b, c, d;
  return g;
}

}  // namespace

TEST_CASE("rank-one bracket structure constants") {
  const auto w = witt_algebra();
  CHECK(bracket(e(w, 1), e(w, -1)) == Rational(-2) * e(w, 0));
  CHECK(bracket(e(w, 0), e(w, 0)).is_zero());
  CHECK(bracket(e(w, 2), e(w, 5)) == Rational(3) * e(w, 7));
  CHECK(e(w, 3).to_string() == "(1)*e[3]");
}

TEST_CASE("W_n bracket on hand-substituted examples") {
  const auto w2 = std::make_shared<const Wn>(2);
  CHECK(bracket(td(w2, {1, 0}, 1), td(w2, {0, 1}, 2)).is_zero());
  const auto expected = td(w2, {1, 1}, 1) - td(w2, {1, 1}, 2);
  CHECK(bracket(td(w2, {1, 0}, 2), td(w2, {0, 1}, 1)) == expected);
  CHECK(td(w2, {1, -2}, 2).to_string() == "(1)*t[1,-2]d2");
}

TEST_CASE("Jacobi identity on exhaustive boxes") {
  const auto w = witt_algebra();
  std::vector<std::array<LieElement<W1>, 3>> triples;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c) triples.push_back({e(w, a), e(w, b), e(w, c)});
  const auto r1 = jacobi_check(triples);
  CHECK(r1.checked == 343);
  CHECK(r1.pass());

  for (int n : {2, 3}) {
    const auto wn = std::make_shared<const Wn>(n);
    const auto box = wn_box(wn, 1);
    std::vector<std::array<LieElement<Wn>, 3>> t;
    // Jacobi is alternating, so unordered triples of distinct elements suffice.
    for (std::size_t i = 0; i < box.size(); ++i)
      for (std::size_t j = i + 1; j < box.size(); ++j)
        for (std::size_t k = j + 1; k < box.size(); ++k) t.push_back({box[i], box[j], box[k]});
    const auto rep = jacobi_check(t);
    CHECK(rep.pass());
    CHECK(rep.checked == static_cast<int>(t.size()));
  }
}

TEST_CASE("symbolic rank-one Jacobi and bilinearity") {
  const auto w = symbolic_witt_algebra({"k", "s", "p"});
  const auto& lat = w->lattice();
  using E = LieElement<Rank1Algebra<PolyQ>>;
  const E ek = E::basis(w, lat.generator("k"));
  const E es = E::basis(w, lat.generator("s"));
  const E ep = E::basis(w, lat.generator("p"));
  CHECK(jacobi_check(std::vector<std::array<E, 3>>{{ek, es, ep}}).pass());

  // [e_k, e_s] = (s - k) e_{k+s}
  const auto ctx = w->weights()[1].context();
  const PolyQ k = PolyQ::variable(ctx, "k");
  const PolyQ s = PolyQ::variable(ctx, "s");
  CHECK(bracket(ek, es) == (s - k) * E::basis(w, lat.generator("k") + lat.generator("s")));

  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> shift(-2, 2);
  auto random_element = [&]() {
    E x(w);
    for (int t = 0; t < 3; ++t) {
      LatticePoint idx = lat.zero();
      for (int i = 0; i < lat.rank(); ++i) idx(i) = shift(rng);
      x.add_term(idx, PolyQ(coef(rng)) * k + PolyQ(coef(rng)));
    }
    return x;
  };
  for (int trial = 0; trial < 30; ++trial) {
    const E x = random_element(), y = random_element(), z = random_element();
    CHECK(bracket(x, y) == -bracket(y, x));
    CHECK(bracket(x + y, z) == bracket(x, z) + bracket(y, z));
    CHECK(jacobi_check(std::vector<std::array<E, 3>>{{x, y, z}}).pass());
  }
}

TEST_CASE("solenoidal embedding") {
  const auto wmu = solenoidal_algebra(2);
  const auto w2 = std::make_shared<const WnP>(2);
  using E = LieElement<Rank1Algebra<PolyQ>>;
  using F = LieElement<WnP>;
  const auto ctx = wmu->weights()[0].context();
  const PolyQ mu1 = PolyQ::variable(ctx, "mu1");
  const PolyQ mu2 = PolyQ::variable(ctx, "mu2");

  const F d_mu = solenoidal_embed(E::basis(wmu, lattice_point({0, 0})), w2);
  CHECK(d_mu == mu1 * F::basis(w2, {lattice_point({0, 0}), 0}) + mu2 * F::basis(w2, {lattice_point({0, 0}), 1}));

  std::vector<E> basis;
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) basis.push_back(E::basis(wmu, lattice_point({a, b})));
  for (const auto& x : basis) {
    // phi(r) is the eigenvalue of ad(d_mu) on the embedded t^r d_mu.
    const F ex = solenoidal_embed(x, w2);
    CHECK(bracket(d_mu, ex) == wmu->phi(x.terms().begin()->first) * ex);
    for (const auto& y : basis) CHECK(solenoidal_embed(bracket(x, y), w2) == bracket(ex, solenoidal_embed(y, w2)));
  }
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      CHECK(!(solenoidal_embed(basis[i], w2) == solenoidal_embed(basis[j], w2)));

  CHECK_THROWS_AS(solenoidal_embed(E::basis(wmu, lattice_point({0, 0})), std::make_shared<const WnP>(3)),
                  PreconditionError);
}

TEST_CASE("GL_n(Z) automorphisms of W_n") {
  const auto w2 = std::make_shared<const Wn>(2);
  const auto box = wn_box(w2, 1);
  const std::vector<LatticeAutomorphism> gs{
      LatticeAutomorphism(mat2(1, 1, 0, 1)), LatticeAutomorphism(mat2(0, 1, 1, 0)),
      LatticeAutomorphism(mat2(2, 1, 1, 1)), LatticeAutomorphism(mat2(-1, 0, 3, 1))};

  for (const auto& x : box) CHECK(apply_automorphism(LatticeAutomorphism::identity(2), x) == x);

  for (const auto& g : gs)
    for (const auto& x : box)
      for (const auto& y : box)
        CHECK(apply_automorphism(g, bracket(x, y)) == bracket(apply_automorphism(g, x), apply_automorphism(g, y)));

  for (const auto& g : gs)
    for (const auto& h : gs)
      for (const auto& x : box) CHECK(apply_automorphism(g, apply_automorphism(h, x)) == apply_automorphism(g * h, x));

  CHECK_THROWS_AS(LatticeAutomorphism(mat2(2, 0, 0, 1)), PreconditionError);
  CHECK_THROWS_AS(LatticeAutomorphism(mat2(1, 2, 2, 4)), PreconditionError);
}
