#include "doctest.h"
#include "wittforge/modules/checks.hpp"

using namespace wittforge;

namespace {

using P = PolyQ;
using M1 = PolyWeightModule<Rational>;
using Wn = WnAlgebra<Rational>;

SymbolContext params(std::vector<std::string> names) { return make_symbols(std::move(names)); }

/// B's action written in A's slot variables, compared entrywise.
template <ExactField F>
bool same_action(const PolyWeightModule<F>& A, const PolyWeightModule<F>& B) {
  if (A.n() != B.n() || A.dim() != B.dim()) return false;
  std::vector<Polynomial<F>> m, s;
  for (int a = 0; a < A.n(); ++a) {
    m.push_back(A.m_var(a));
    s.push_back(A.s_var(a));
  }
  for (int a = 0; a < A.n(); ++a) {
    const auto lhs = A.generic_matrix(a, PolyWeightModule<F>::slots(m, s, A.params_in(A.symbols())));
    const auto rhs = B.generic_matrix(a, PolyWeightModule<F>::slots(m, s, B.params_in(A.symbols())));
    if (!(lhs == rhs)) return false;
  }
  for (int a = 0; a < A.n(); ++a)
    if (!(A.beta()[a] == B.beta()[a].in_context(A.symbols()))) return false;
  return true;
}

IntMatrix mat2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  IntMatrix g(2, 2);
  g << a, b, c, d;
  return g;
}

Offset lift(const IntMatrix& g, const Offset& o) {
  Offset out(o.size(), 0);
  for (std::size_t a = 0; a < o.size(); ++a)
    for (std::size_t b = 0; b < o.size(); ++b) out[a] += g(a, b) * o[b];
  return out;
}

}  // namespace

TEST_CASE("tensor densities and the symbolic UEA action") {
  const M1 T = tensor_density<Rational>(P(3), P(0));
  const auto v = act(T, 0, {2}, ModuleVector<Rational>::basis({1}, 0));
  CHECK(v == ModuleVector<Rational>::basis({3}, 0, P(7)));

  const auto ctx = params({"alpha"});
  const M1 Ta = tensor_density<Rational>(P::variable(ctx, "alpha"), P(0));
  const auto w = symbolic_witt_algebra({"k", "s"});
  const auto& lat = w->lattice();
  const auto u = multiply(UEAElement<PolyQ>::generator(w, lat.generator("k")),
                          UEAElement<PolyQ>::generator(w, lat.generator("s")));
  const auto image = apply_uea(u, Ta, "p", 0);
  REQUIRE(image.parts.size() == 1);
  const auto& sym = image.symbols;
  const P k = P::variable(sym, "k"), s = P::variable(sym, "s"), p = P::variable(sym, "p"),
          alpha = P::variable(sym, "alpha");
  CHECK(image.parts[0].first == p + k + s);
  CHECK(image.parts[0].second(0) == (p + alpha * s) * (p + s + alpha * k));
  CHECK_THROWS_AS(apply_uea(u, Ta, "k", 0), PreconditionError);
}

TEST_CASE("presets: punctured functions and the Virasoro adjoint") {
  const M1 F = punctured_functions();
  CHECK(act(F, 0, {2}, ModuleVector<Rational>::basis({3}, 0)) == ModuleVector<Rational>::basis({5}, 0, P(3)));
  CHECK(act(F, 0, {2}, ModuleVector<Rational>::basis({0}, 0)).is_zero());
  CHECK(act(F, 0, {-3}, ModuleVector<Rational>::basis({3}, 0)).is_zero());
  CHECK(check_module_axioms(F).pass());

  const M1 V = virasoro_adjoint();
  auto expected = ModuleVector<Rational>::basis({0}, 0, P(-4));
  expected.add({0}, 1, P(8));
  CHECK(act(V, 0, {2}, ModuleVector<Rational>::basis({-2}, 0)) == expected);
  CHECK(act(V, 0, {1}, ModuleVector<Rational>::basis({0}, 1)).is_zero());
  const auto rep = check_module_axioms(V);
  CHECK(rep.pass());
  CHECK(rep.window_checked > 0);

  const auto ff = std::get<PolyWeightModule<QuadExt>>(build_preset("feigin_fuks_length2"));
  CHECK(ff.field_name() == "Q(sqrt(19))");
  CHECK(check_module_axioms(ff).pass());
  CHECK_THROWS_AS(build_preset("nope"), PreconditionError);
}

TEST_CASE("tensor fields over W_n: natural representation, axioms, AW compatibility") {
  using G = GLnRepData<Rational>;
  const auto bctx = params({"b1", "b2"});
  const std::vector<P> beta{P::variable(bctx, "b1"), P::variable(bctx, "b2")};
  const M1 T = tensor_field(G::natural(2), beta);
  // (t^(1,0) d_2)(t^beta (x) e_2) = b2 t^{beta+(1,0)} e_2 + m_1 E_12 e_2 = b2 e_2 + e_1.
  const auto w2 = std::make_shared<const Wn>(2);
  const auto x = LieElement<Wn>::basis(w2, {lattice_point({1, 0}), 1});
  auto expected = ModuleVector<Rational>::basis({1, 0}, 1, T.param("b2"));
  expected.add({1, 0}, 0, T.constant(Rational(1)));
  CHECK(act(T, x, ModuleVector<Rational>::basis({0, 0}, 1)) == expected);

  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= n; ++k) {
      std::vector<P> b;
      for (int a = 0; a < n; ++a) b.push_back(P(Rational(a, 2)));
      const M1 Om = omega_forms<Rational>(n, k, b);
      CHECK(check_module_axioms(Om).pass());
      CHECK(check_aw_compat(Om).pass());
    }
  CHECK(check_module_axioms(tensor_field(G::exterior_power(3, 2), {P(0), P(0), P(0)})).pass());

  std::map<std::pair<int, int>, MatrixX<Rational>> bad;
  bad[{0, 1}] = identity_matrix<Rational>(2);
  CHECK_THROWS_AS(G(2, 2, bad), PreconditionError);
}

TEST_CASE("corrupted presentations fail the axiom checks") {
  M1 T = tensor_density<Rational>(P(2), P(0));
  T.add_term(0, 0, 0, T.m_var(0) * T.m_var(0));
  const auto rep = check_module_axioms(T);
  CHECK_FALSE(rep.pass());
  CHECK_FALSE(rep.residues.empty());

  M1 V = virasoro_adjoint();
  V.add_term(0, 0, 1, V.m_var(0) * V.m_var(0), AffineConstraint{{1}, {1}, 0});
  CHECK_FALSE(check_module_axioms(V).pass());

  M1 A = omega_forms<Rational>(2, 1, {P(0), P(0)});
  A.add_term(0, 0, 0, A.s_var(0) * A.s_var(0));
  CHECK_FALSE(check_aw_compat(A).pass());
  CHECK_FALSE(check_aw_compat(punctured_functions()).pass());
}

TEST_CASE("de Rham differential and homology") {
  const std::vector<P> zero2{P(0), P(0)};
  const auto d = de_rham_d<Rational>(2, 0, zero2, ModuleVector<Rational>::basis({2, 1}, 0));
  auto expected = ModuleVector<Rational>::basis({2, 1}, 0, P(2));
  expected.add({2, 1}, 1, P(1));
  CHECK(d == expected);

  for (int n = 1; n <= 3; ++n) {
    std::vector<Rational> zero(n, Rational(0)), half(n, Rational(0));
    half[0] = Rational(1, 2);
    for (const auto& w : offset_box(n, 1)) {
      const auto h = de_rham_homology(n, zero, w);
      bool origin = true;
      for (long x : w) origin = origin && x == 0;
      for (int k = 0; k <= n; ++k) CHECK(h[k] == (origin ? binomial(n, k).to_long() : 0));
      for (int hk : de_rham_homology(n, half, w)) CHECK(hk == 0);
    }
    const auto rep = check_de_rham(n, n == 3 ? 1 : 2);
    CHECK(rep.pass());
  }
  CHECK(de_rham_homology(2, {Rational(0), Rational(0)}, {0, 0}) == std::vector<int>{1, 2, 1});
}

TEST_CASE("jet modules reproduce tensor fields and accept nilpotent blocks") {
  using J = JPlusRepData<Rational>;
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::string> names;
    for (int a = 1; a <= n; ++a) names.push_back("b" + std::to_string(a));
    const auto ctx = params(names);
    std::vector<P> beta;
    for (int a = 0; a < n; ++a) beta.push_back(P::variable(ctx, a));
    const auto V = GLnRepData<Rational>::natural(n);
    const M1 jets = jets_module(J::from_gl(V, 2), beta, V.labels());
    CHECK(same_action(jets, tensor_field(V, beta)));
  }

  MatrixX<Rational> h = zero_matrix<Rational>(2, 2), e12 = zero_matrix<Rational>(2, 2);
  h(0, 0) = Rational(1);
  e12(0, 1) = Rational(1);
  const J rho(1, 2, 2, {{{{1}, 0}, h}, {{{2}, 0}, e12}});
  const M1 N = jets_module(rho, {P(Rational(1, 3))});
  CHECK(check_module_axioms(N).pass());
  CHECK(check_aw_compat(N).pass());
  CHECK_THROWS_AS(J(1, 2, 2, {{{{1}, 0}, e12}, {{{2}, 0}, h}}), PreconditionError);
}

TEST_CASE("graded dual") {
  const auto ctx = params({"alpha", "beta"});
  const P alpha = P::variable(ctx, "alpha"), beta = P::variable(ctx, "beta");
  const M1 T = tensor_density(alpha, beta);
  const M1 D = graded_dual(T);
  CHECK(same_action(D, tensor_density(P(1) - alpha, -beta)));
  CHECK(same_action(graded_dual(D), T));
  CHECK(check_module_axioms(D).pass());

  const M1 Vd = graded_dual(virasoro_adjoint());
  CHECK(check_module_axioms(Vd).pass());
  CHECK(check_module_axioms(graded_dual(punctured_functions())).pass());
  CHECK(check_module_axioms(graded_dual(feigin_fuks_length2())).pass());
  CHECK(check_module_axioms(graded_dual(omega_forms<Rational>(2, 1, {P(0), P(0)}))).pass());
}

TEST_CASE("twists by GL_n(Z)") {
  const auto bctx = params({"b1", "b2"});
  const std::vector<P> beta{P::variable(bctx, "b1"), P::variable(bctx, "b2")};
  const M1 T = omega_forms<Rational>(2, 1, beta);
  CHECK(same_action(twist(T, LatticeAutomorphism::identity(2)), T));

  const std::vector<LatticeAutomorphism> gs{LatticeAutomorphism(mat2(1, 1, 0, 1)),
                                            LatticeAutomorphism(mat2(0, 1, 1, 0)),
                                            LatticeAutomorphism(mat2(2, 1, 1, 1))};
  const auto w2 = std::make_shared<const Wn>(2);
  for (const auto& g : gs) {
    const M1 Tg = twist(T, g);
    CHECK(check_module_axioms(Tg).pass());
    CHECK(check_aw_compat(Tg).pass());
    for (const auto& h : gs) CHECK(same_action(twist(Tg, h), twist(T, g * h)));
    // x acts on M^g as g(x) acts on M, with offsets related by o -> g o.
    for (const auto& r : offset_box(2, 1))
      for (int a = 0; a < 2; ++a) {
        const auto x = LieElement<Wn>::basis(w2, {lattice_point(std::vector<std::int64_t>(r.begin(), r.end())), a});
        for (int f = 0; f < 2; ++f) {
          const Offset o{1, -1};
          const auto lhs = act(Tg, x, ModuleVector<Rational>::basis(o, f, Tg.constant(Rational(1))));
          const auto rhs = act(T, apply_automorphism(g, x), ModuleVector<Rational>::basis(lift(g.matrix(), o), f));
          ModuleVector<Rational> moved;
          for (const auto& [key, c] : lhs.terms()) moved.add(lift(g.matrix(), key.first), key.second, c.in_context(T.symbols()));
          CHECK(moved == rhs);
        }
      }
  }
  const M1 Vg = twist(tensor_field(GLnRepData<Rational>::natural(2), {P(0), P(0)}), gs[2]);
  CHECK(check_module_axioms(Vg).pass());
}

TEST_CASE("differentiators annihilating modules") {
  const auto ctx = params({"alpha", "beta"});
  const M1 T = tensor_density(P::variable(ctx, "alpha"), P::variable(ctx, "beta"));
  const auto c3 = annihilates(3, T);
  CHECK(c3.pass());
  CHECK(c3.residues.empty());
  const auto c2 = annihilates(2, T);
  CHECK_FALSE(c2.pass());
  REQUIRE(c2.residues.size() == 1);
  CHECK(c2.residues[0] == "v<-v: -2*alpha^2 + 2*alpha");
  REQUIRE(c2.witness);

  CHECK(annihilates(3, punctured_functions()).pass());
  CHECK(annihilates(2, tensor_density<Rational>(P(0), P(0))).pass());

  const auto ff = feigin_fuks_length2();
  CHECK(annihilates(9, ff).pass());
  CHECK(annihilates(12, ff).pass());
  const auto c8 = annihilates(8, ff);
  CHECK_FALSE(c8.pass());
  REQUIRE(c8.witness);
  CHECK(c8.witness->entry == "u<-w");

  // Direct evaluation at k = 1, s = 0 on the weight-0 vector w.
  using PQ = Polynomial<QuadExt>;
  MatrixX<PQ> total = zero_matrix<PQ>(2, 2);
  for (int i = 0; i <= 8; ++i) {
    Rational c = binomial(8, i);
    if (i % 2) c = -c;
    total += PQ(QuadExt(c)) * multiply<PQ>(ff.concrete_matrix(0, {1 - i}, {i}), ff.concrete_matrix(0, {i}, {0}));
  }
  CHECK(total(0, 1) == PQ(QuadExt(Rational(151200))));
}

TEST_CASE("weight reports and the gamma module") {
  const auto rep = weight_report(punctured_functions(), 2);
  CHECK_FALSE(rep.uniform);
  CHECK(rep.max_dim == 1);
  CHECK(rep.dims.size() == 5);
  CHECK(weight_report(virasoro_adjoint(), 2).max_dim == 2);
  CHECK(weight_report(tensor_density<Rational>(P(1), P(0)), 3).uniform);

  const auto ctx = params({"b1", "gamma"});
  const M1 G = gamma_module(GLnRepData<Rational>::natural(1), {P::variable(ctx, "b1")}, P::variable(ctx, "gamma"));
  CHECK(G.degree_zero());
  CHECK(check_module_axioms(G).pass());
  const M1 G2 = gamma_module(GLnRepData<Rational>::exterior_power(2, 1), {P(0), P(Rational(1, 2))}, P(3));
  CHECK(check_module_axioms(G2).pass());
  CHECK(weight_report(G2, 1).dims.size() == 9);
  CHECK_THROWS_AS(twist(G2, LatticeAutomorphism::identity(3)), UnsupportedPresentation);
}
