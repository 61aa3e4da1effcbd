// Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic throughout.
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "wittforge/acover/cover.hpp"
#include "wittforge/enveloping/key_identity.hpp"
#include "wittforge/lie/automorphism.hpp"

using namespace wittforge;

namespace {

using P = PolyQ;
using M1 = PolyWeightModule<Rational>;
using Q = QuasiPolyVector<Rational>;

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) note << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

template <ExactField F>
bool same_action(const PolyWeightModule<F>& A, const PolyWeightModule<F>& B) {
  if (A.n() != B.n() || A.dim() != B.dim()) return false;
  std::vector<Polynomial<F>> m, s;
  for (int a = 0; a < A.n(); ++a) {
    m.push_back(A.m_var(a));
    s.push_back(A.s_var(a));
  }
  for (int a = 0; a < A.n(); ++a)
    if (!(A.generic_matrix(a, PolyWeightModule<F>::slots(m, s, A.params_in(A.symbols()))) ==
          B.generic_matrix(a, PolyWeightModule<F>::slots(m, s, B.params_in(A.symbols())))))
      return false;
  for (int a = 0; a < A.n(); ++a)
    if (!(A.beta()[a] == B.beta()[a].in_context(A.symbols()))) return false;
  return true;
}

SymbolContext param_symbols(std::initializer_list<std::string> names) {
  return make_symbols(std::vector<std::string>(names));
}

void key_identity(Outcome& o) {
  int records = 0;
  for (int m = 2; m <= 4; ++m)
    for (int r = 2; r <= 4; ++r) {
      const auto rec = verify_key_identity_symbolic(m, r);
      ++records;
      o.expect(rec.pass(), "symbolic (" + std::to_string(m) + "," + std::to_string(r) + ")");
    }
  for (auto [m, r] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}}) {
    const auto grid = verify_key_identity_grid(m, r, -2, 2);
    o.expect(grid.size() == 625, "grid size");
    for (const auto& rec : grid) {
      ++records;
      o.expect(rec.pass(), "grid (" + std::to_string(m) + "," + std::to_string(r) + ")");
    }
  }
  o.note << records << " records, 0 residue terms required";
}

void intro_form(Outcome& o) {
  for (int m : {2, 3}) {
    const auto rec = verify_intro_identity(m);
    o.expect(rec.pass(), "m=r=" + std::to_string(m));
  }
  o.note << "m=r in {2,3}";
}

void solenoidal(Outcome& o) {
  int n = 0;
  for (const auto& h : offset_box(2, 2)) {
    ++n;
    o.expect(verify_solenoidal_identity(2, 2, h).pass(), "h=" + offset_to_string(h));
  }
  o.note << n << " steps h";
}

void omega3_density(Outcome& o) {
  const auto ctx = param_symbols({"alpha", "beta"});
  const M1 T = tensor_density(P::variable(ctx, "alpha"), P::variable(ctx, "beta"));
  const auto c3 = annihilates(3, T);
  o.expect(c3.pass() && c3.symbolic_zero && c3.residues.empty(), "order 3 leaves a residue");
  const auto c2 = annihilates(2, T);
  o.expect(!c2.pass() && !c2.residues.empty(), "order 2 should not annihilate");
  // independent: e_a v_b = (b + alpha a) v_{a+b} applied twice at alpha = 1/2, beta = 0, k=1, s=0, p=0
  Rational direct(0);
  const Rational alpha(1, 2);
  for (int i = 0; i <= 2; ++i) {
    const Rational c = (i % 2 ? Rational(-1) : Rational(1)) * binomial(2, i);
    const Rational first = Rational(0) + alpha * Rational(i);
    const Rational second = Rational(i) + alpha * Rational(1 - i);
    direct += c * first * second;
  }
  o.expect(!direct.is_zero(), "direct order-2 evaluation is zero");
  if (!c2.residues.empty()) o.note << "order-2 residue " << c2.residues[0];
}

void feigin_fuks(Outcome& o) {
  const auto ff = feigin_fuks_length2();
  o.expect(ff.field_name() == "Q(sqrt(19))", "field");
  o.expect(annihilates(9, ff).pass(), "order 9");
  o.expect(annihilates(12, ff).pass(), "order 12");
  const auto c8 = annihilates(8, ff);
  o.expect(!c8.pass() && c8.witness.has_value(), "order 8 witness");
  if (c8.witness) {
    // recompute the witnessed entry from the raw action matrices
    const auto& w = *c8.witness;
    using PQ = Polynomial<QuadExt>;
    MatrixX<PQ> total = zero_matrix<PQ>(2, 2);
    for (int i = 0; i <= 8; ++i) {
      Rational c = binomial(8, i);
      if (i % 2) c = -c;
      total += PQ(QuadExt(c)) *
               multiply<PQ>(ff.concrete_matrix(0, {w.k - i}, {w.p + w.s + i}), ff.concrete_matrix(0, {w.s + i}, {w.p}));
    }
    o.expect(total(0, 1).to_string() == w.value, "witness value recomputed");
    o.note << "order 8 witness " << w.entry << " = " << w.value << " at (k,s,p)=(" << w.k << "," << w.s << "," << w.p
           << ")";
  }
}

void hole_filling(Outcome& o) {
  const ACover<Rational> C(punctured_functions());
  const auto cov = build_cover(C, 7);
  const auto cert = cuspidality_certificate(C, cov);
  o.expect(cert.pass() && cert.rank == 1 && cert.ranks.size() == 15, "uniform rank 1 on 15 weights");
  const P s = cov.action.s_var(0), m = cov.action.m_var(0);
  o.expect(cov.action.generic_matrix(0, {m, s})(0, 0) == s, "e_p theta_j = j theta_{j+p}");
  o.expect(cov.a_action(0, 0) == P(1), "t^p theta_j = theta_{j+p}");
  // and by direct evaluation against the coinduced action
  for (long j = -5; j <= 5; ++j)
    for (long p = -2; p <= 2; ++p) {
      const auto th = cov.bases.at(j).vectors[0];
      const auto ep = C.act_e(p, j, th);
      const auto target = cov.bases.at(j + p).vectors[0];
      for (long mm = -4; mm <= 4; ++mm)
        if (j + p + mm != 0) o.expect(ep.value(mm)(0) == Rational(j) * target.value(mm)(0), "e_p theta_j by value");
    }
  o.expect(cov.bases.at(0).rank() == 1, "weight 0 is one dimensional");
  o.expect(C.pi(0, cov.bases.at(0).vectors[0]).is_zero(), "pi(theta_0) = 0");
  o.expect(check_module_axioms(cov.action).pass() && check_cover_aw(cov).pass(), "cover axioms");
  o.note << "rank " << cert.rank << " over " << cert.ranks.size() << " weights";
}

void virasoro(Outcome& o) {
  const ACover<Rational> C(virasoro_adjoint());
  const auto cov = build_cover(C, 7);
  const auto cert = cuspidality_certificate(C, cov);
  o.expect(cert.pass() && cert.rank == 3, "uniform rank 3");
  const std::function<std::vector<Q>(long)> frame = virasoro_cover_frame;
  int checked = 0;
  for (long p = -3; p <= 3; ++p)
    for (long j = -3; j <= 3; ++j) {
      const auto A = action_in_frame(C, cov, p, j, frame);
      const Rational P_(p), J(j);
      const Rational expected[3][3] = {{J - Rational(2) * P_, Rational(0), Rational(0)},
                                       {Rational(2) * P_ * P_, J - P_, Rational(0)},
                                       {-P_ * P_ * P_ * P_, P_ * P_ * P_, J + P_}};
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
          ++checked;
          o.expect(A(r, c) == expected[r][c], "frame coefficient");
        }
    }
  for (long w = -5; w <= 5; ++w) {
    const auto f = frame(w);
    o.expect(C.pi(w, f[0]) == ModuleVector<Rational>::basis({w}, 0, P(Rational(w))), "pi(tau)");
    o.expect(C.pi(w, f[1]) == ModuleVector<Rational>::basis({w}, 0), "pi(theta)");
    o.expect(C.pi(w, f[2]) == (w == 0 ? ModuleVector<Rational>::basis({0}, 1) : ModuleVector<Rational>()), "pi(eta)");
  }
  o.note << checked << " frame coefficients, cover degree " << cov.degree;
}

void de_rham(Outcome& o) {
  for (int n = 1; n <= 3; ++n) {
    std::vector<Rational> zero(n, Rational(0)), half(n, Rational(0));
    half[0] = Rational(1, 2);
    for (const auto& w : offset_box(n, 2)) {
      bool origin = true;
      for (long x : w) origin = origin && x == 0;
      const auto h0 = de_rham_homology(n, zero, w);
      const auto hh = de_rham_homology(n, half, w);
      for (int k = 0; k <= n; ++k) {
        o.expect(h0[k] == (origin ? binomial(n, k).to_long() : 0), "beta=0 ranks");
        o.expect(hh[k] == 0, "beta=1/2 ranks");
      }
    }
    const auto rep = check_de_rham(n, 2);
    o.expect(rep.pass(), "d o d and equivariance, n=" + std::to_string(n));
  }
  o.note << "n=1..3, weights and generators with |.|<=2";
}

void jets_vs_tensor(Outcome& o) {
  using J = JPlusRepData<Rational>;
  const auto ctx = param_symbols({"b1", "b2", "b3"});
  for (int n = 1; n <= 3; ++n) {
    const auto V = GLnRepData<Rational>::natural(n);
    std::vector<P> beta;
    for (int a = 0; a < n; ++a) beta.push_back(P::variable(ctx, a));
    for (int cutoff : {1, 2, 3}) {
      const M1 jets = jets_module(J::from_gl(V, cutoff), beta, V.labels());
      o.expect(same_action(jets, tensor_field(V, beta)), "n=" + std::to_string(n));
    }
  }
  o.note << "natural gl_n, n=1..3, symbolic beta";
}

void axiom_suites(Outcome& o) {
  int modules = 0;
  auto axioms = [&](const auto& M, const std::string& what) {
    ++modules;
    o.expect(check_module_axioms(M).pass(), what + " axioms");
  };
  auto both = [&](const auto& M, const std::string& what) {
    axioms(M, what);
    o.expect(check_aw_compat(M).pass(), what + " AW");
  };
  const auto ctx = param_symbols({"alpha", "beta"});
  const M1 T = tensor_density(P::variable(ctx, "alpha"), P::variable(ctx, "beta"));
  both(T, "tensor_density");
  both(graded_dual(T), "dual tensor_density");
  for (const auto& name : preset_names())
    std::visit(
        [&](const auto& M) {
          axioms(M, name);
          axioms(graded_dual(M), "dual " + name);
          axioms(twist(M, LatticeAutomorphism(-IntMatrix::Identity(1, 1))), "twist " + name);
        },
        build_preset(name));
  IntMatrix g2(2, 2), g3 = IntMatrix::Identity(3, 3);
  g2 << 2, 1, 1, 1;
  g3(0, 1) = 1;
  g3(2, 0) = -1;
  for (int n = 1; n <= 3; ++n) {
    std::vector<P> beta;
    for (int a = 0; a < n; ++a) beta.push_back(P(Rational(a + 1, 3)));
    const auto g = n == 1 ? LatticeAutomorphism(-IntMatrix::Identity(1, 1)) : LatticeAutomorphism(n == 2 ? g2 : g3);
    for (int k = 0; k <= n; ++k) {
      const auto U = GLnRepData<Rational>::exterior_power(n, k);
      const M1 Tf = tensor_field(U, beta);
      const std::string tag = "n=" + std::to_string(n) + " k=" + std::to_string(k);
      both(Tf, "tensor_field " + tag);
      both(omega_forms<Rational>(n, k, beta), "omega " + tag);
      both(twist(Tf, g), "twist " + tag);
      both(graded_dual(Tf), "dual " + tag);
      both(jets_module(JPlusRepData<Rational>::from_gl(U, 2), beta), "jets " + tag);
    }
  }
  both(gamma_module(GLnRepData<Rational>::natural(2), {P(0), P(Rational(1, 2))}, P(3)), "gamma");
  for (const auto& M : {punctured_functions(), virasoro_adjoint(), tensor_density<Rational>(P(Rational(1, 2)), P(Rational(1, 3)))}) {
    const ACover<Rational> C(M);
    const auto cov = build_cover(C, 3);
    axioms(cov.action, "cover action");
    o.expect(check_cover_aw(cov).pass(), "cover AW");
  }

  // negative controls must fail
  M1 bad = tensor_density<Rational>(P(Rational(1, 2)), P(0));
  bad.add_term(0, 0, 0, bad.m_var(0) * bad.m_var(0));
  o.expect(!check_module_axioms(bad).pass(), "corrupted density passes");
  M1 badv = virasoro_adjoint();
  badv.add_term(0, 0, 1, badv.m_var(0) * badv.m_var(0), AffineConstraint{{1}, {1}, 0});
  o.expect(!check_module_axioms(badv).pass(), "corrupted Virasoro passes");
  M1 bada = omega_forms<Rational>(2, 1, {P(0), P(0)});
  bada.add_term(0, 0, 0, bada.s_var(0) * bada.s_var(0));
  o.expect(!check_aw_compat(bada).pass(), "corrupted AW passes");
  o.note << modules << " modules, 3 negative controls";
}

void pbw(Outcome& o) {
  const auto w = witt_algebra();
  using U = UEAElement<Rational>;
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> nterms(1, 3), len(1, 4), idx(-3, 3), coef(-4, 4);
  int samples = 0;
  for (int t = 0; t < 1000; ++t) {
    U x(w);
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
      UEAMonomial word;
      const int l = len(rng);
      for (int j = 0; j < l; ++j) word.push_back(lattice_point({idx(rng)}));
      x.add_term(word, Rational(coef(rng)));
    }
    const U left = pbw_normal_form(x, ReductionStrategy::LeftmostDescent);
    o.expect(left == pbw_normal_form(x, ReductionStrategy::RightmostDescent), "confluence");
    o.expect(left.is_normal() && pbw_normal_form(left) == left, "idempotence");
    ++samples;
  }

  using W1 = Rank1Algebra<Rational>;
  std::vector<std::array<LieElement<W1>, 3>> triples;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c)
        triples.push_back({LieElement<W1>::basis(w, lattice_point({a})), LieElement<W1>::basis(w, lattice_point({b})),
                           LieElement<W1>::basis(w, lattice_point({c}))});
  const auto r1 = jacobi_check(triples);
  o.expect(r1.pass(), "Jacobi W1 box");
  int checked = r1.checked;
  using Wn = WnAlgebra<Rational>;
  for (int n : {2, 3}) {
    const auto wn = std::make_shared<const Wn>(n);
    std::vector<LieElement<Wn>> box;
    for (const auto& r : offset_box(n, 1))
      for (int a = 0; a < n; ++a) {
        std::vector<std::int64_t> rr(r.begin(), r.end());
        box.push_back(LieElement<Wn>::basis(wn, {lattice_point(rr), a}));
      }
    std::vector<std::array<LieElement<Wn>, 3>> t;
    for (std::size_t i = 0; i < box.size(); ++i)
      for (std::size_t j = i + 1; j < box.size(); ++j)
        for (std::size_t k = j + 1; k < box.size(); ++k) t.push_back({box[i], box[j], box[k]});
    const auto rep = jacobi_check(t);
    o.expect(rep.pass(), "Jacobi W" + std::to_string(n) + " box");
    checked += rep.checked;
  }
  const auto ws = symbolic_witt_algebra({"k", "s", "p"});
  using E = LieElement<Rank1Algebra<PolyQ>>;
  const auto& lat = ws->lattice();
  o.expect(jacobi_check(std::vector<std::array<E, 3>>{{E::basis(ws, lat.generator("k")), E::basis(ws, lat.generator("s")),
                                                       E::basis(ws, lat.generator("p"))}})
               .pass(),
           "symbolic Jacobi");
  o.note << samples << " normal forms, " << checked << " Jacobi triples plus a symbolic one";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"key identity, symbolic and grid", key_identity},
      {"intro specialization", intro_form},
      {"solenoidal identity", solenoidal},
      {"order-3 differentiator on tensor densities", omega3_density},
      {"length-2 Feigin-Fuks module", feigin_fuks},
      {"A-cover of punctured functions", hole_filling},
      {"A-cover of the Virasoro adjoint", virasoro},
      {"de Rham complex", de_rham},
      {"jets versus tensor fields", jets_vs_tensor},
      {"axiom suites", axiom_suites},
      {"PBW and Jacobi", pbw},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << " exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << "  (" << o.note.str()
              << "; " << std::fixed << std::setprecision(2) << secs << "s)" << std::endl;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size() << std::endl;
  return failed ? 1 : 0;
}
