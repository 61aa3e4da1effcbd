#pragma once

#include <string>
#include <variant>
#include <vector>

#include "wittforge/modules/poly_module.hpp"
#include "wittforge/modules/reps.hpp"

namespace wittforge {

/// Symbol names of the given polynomials' contexts, in order, without repeats.
template <ExactField F>
std::vector<std::string> parameter_names(std::initializer_list<const std::vector<Polynomial<F>>*> groups) {
  std::vector<std::string> out;
  for (const auto* g : groups)
    for (const auto& p : *g) {
      if (!p.context()) continue;
      for (const auto& name : *p.context())
        if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    }
  return out;
}

/// T(alpha, beta): e_m v_s = (s + alpha m) v_{s+m}.
template <ExactField F>
PolyWeightModule<F> tensor_density(const Polynomial<F>& alpha, const Polynomial<F>& beta) {
  const std::vector<Polynomial<F>> a{alpha}, b{beta};
  PolyWeightModule<F> M(1, {"v"}, parameter_names<F>({&a, &b}));
  M.set_beta({beta});
  M.add_term(0, 0, 0, M.s_var(0) + alpha.in_context(M.symbols()) * M.m_var(0));
  return M;
}

/// T(U, beta): (t^m d_a)(t^s (x) u) = s_a t^{s+m} (x) u + sum_p m_p t^{s+m} (x) E_{pa} u.
template <ExactField F>
PolyWeightModule<F> tensor_field(const GLnRepData<F>& U, const std::vector<Polynomial<F>>& beta) {
  if (static_cast<int>(beta.size()) != U.n()) throw PreconditionError("beta must have n entries");
  PolyWeightModule<F> M(U.n(), U.labels(), parameter_names<F>({&beta}));
  M.set_beta(beta);
  for (int a = 0; a < U.n(); ++a)
    for (int i = 0; i < U.dim(); ++i)
      for (int j = 0; j < U.dim(); ++j) {
        Polynomial<F> c = i == j ? M.s_var(a) : Polynomial<F>();
        for (int p = 0; p < U.n(); ++p)
          if (!is_zero(U.E(p, a)(i, j))) c += Polynomial<F>(U.E(p, a)(i, j)) * M.m_var(p);
        M.add_term(a, j, i, c);
      }
  return M;
}

/// Omega^k(beta) = T(Lambda^k V, beta).
template <ExactField F>
PolyWeightModule<F> omega_forms(int n, int k, const std::vector<Polynomial<F>>& beta) {
  if (k < 0 || k > n) throw PreconditionError("form degree must lie in 0..n");
  return tensor_field(GLnRepData<F>::exterior_power(n, k), beta);
}

/// Sign of e_a ^ e_I against the sorted wedge basis: (-1)^{#{i in I : i < a}}, 0 if a is in I.
inline int wedge_sign(int a, const std::vector<int>& I) {
  int below = 0;
  for (int i : I) {
    if (i == a) return 0;
    below += i < a;
  }
  return below % 2 ? -1 : 1;
}

/// Matrix of d: Omega^k -> Omega^{k+1} at weight s, d(t^s (x) w) = sum_a s_a t^s (x) (e_a ^ w).
template <class P>
MatrixX<P> de_rham_matrix(int n, int k, const std::vector<P>& s) {
  if (k < 0 || k >= n) throw PreconditionError("d is defined for 0 <= k < n");
  const auto src = GLnRepData<Rational>::wedge_basis(n, k);
  const auto tgt = GLnRepData<Rational>::wedge_basis(n, k + 1);
  MatrixX<P> out = zero_matrix<P>(static_cast<Eigen::Index>(tgt.size()), static_cast<Eigen::Index>(src.size()));
  for (std::size_t c = 0; c < src.size(); ++c)
    for (int a = 0; a < n; ++a) {
      const int sign = wedge_sign(a, src[c]);
      if (sign == 0) continue;
      std::vector<int> J = src[c];
      J.insert(std::upper_bound(J.begin(), J.end(), a), a);
      const auto row = std::find(tgt.begin(), tgt.end(), J) - tgt.begin();
      out(row, static_cast<Eigen::Index>(c)) += P(sign) * s[a];
    }
  return out;
}

/// d applied to a finite combination of t^{beta+o} (x) e_I in Omega^k(beta).
template <ExactField F>
ModuleVector<F> de_rham_d(int n, int k, const std::vector<Polynomial<F>>& beta, const ModuleVector<F>& v) {
  ModuleVector<F> out;
  for (const auto& [key, c] : v.terms()) {
    const auto& [o, fiber] = key;
    std::vector<Polynomial<F>> s(n);
    for (int a = 0; a < n; ++a) s[a] = beta[a] + Polynomial<F>(F(o[a]));
    const auto D = de_rham_matrix(n, k, s);
    for (Eigen::Index r = 0; r < D.rows(); ++r)
      if (!D(r, fiber).is_zero()) out.add(o, static_cast<int>(r), D(r, fiber) * c);
  }
  return out;
}

/// e_k u_s = s u_{s+k} with u_0 = 0.
inline PolyWeightModule<Rational> punctured_functions() {
  PolyWeightModule<Rational> M(1, {"u"});
  M.add_term(0, 0, 0, M.s_var(0));
  M.add_puncture({{0}, {0}});
  return M;
}

/// e_k u_j = (j - k) u_{j+k} + [j + k = 0] k^3 z, e_k z = 0, z living at weight 0.
inline PolyWeightModule<Rational> virasoro_adjoint() {
  PolyWeightModule<Rational> M(1, {"u", "z"});
  M.add_term(0, 0, 0, M.s_var(0) - M.m_var(0));
  const auto m = M.m_var(0);
  M.add_term(0, 0, 1, m * m * m, AffineConstraint{{1}, {1}, 0});
  M.add_localized({1, {{0}}});
  return M;
}

/// Length-two extension 0 -> T((7 - sqrt19)/2) -> M -> T((-5 - sqrt19)/2) -> 0 over Q(sqrt 19).
inline PolyWeightModule<QuadExt> feigin_fuks_length2() {
  using P = Polynomial<QuadExt>;
  PolyWeightModule<QuadExt> M(1, {"u", "w"});
  const P m = M.m_var(0), s = M.s_var(0);
  auto q = [](long a, long b, long den) { return P(QuadExt(Rational(a, den), Rational(b, den), 19)); };
  auto pw = [](const P& x, int e) {
    P out(1);
    for (int i = 0; i < e; ++i) out *= x;
    return out;
  };
  M.add_term(0, 0, 0, s + q(7, -1, 2) * m);
  M.add_term(0, 1, 1, s + q(-5, -1, 2) * m);
  const P coupling = q(-22, -5, 4) * pw(m, 7) + q(-31, -7, 2) * pw(m, 6) * s + q(-25, -7, 2) * pw(m, 5) * pw(s, 2) -
                     P(5) * pw(m, 4) * pw(s, 3) + P(5) * pw(m, 3) * pw(s, 4) + P(2) * pw(m, 2) * pw(s, 5);
  M.add_term(0, 1, 0, coupling);
  return M;
}

using AnyModule = std::variant<PolyWeightModule<Rational>, PolyWeightModule<QuadExt>>;

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"punctured_functions", "virasoro_adjoint", "feigin_fuks_length2"};
  return names;
}

inline AnyModule build_preset(const std::string& name) {
  if (name == "punctured_functions") return punctured_functions();
  if (name == "virasoro_adjoint") return virasoro_adjoint();
  if (name == "feigin_fuks_length2") return feigin_fuks_length2();
  throw PreconditionError("unknown preset '" + name + "'");
}

/// (t^m d_j)(t^s (x) v) = s_j t^{s+m} (x) v + sum_k (m^k / k!) t^{s+m} (x) rho(t^k d_j) v.
template <ExactField F>
PolyWeightModule<F> jets_module(const JPlusRepData<F>& rho, const std::vector<Polynomial<F>>& beta,
                                std::vector<std::string> labels = {}) {
  const int n = rho.n();
  if (static_cast<int>(beta.size()) != n) throw PreconditionError("beta must have n entries");
  if (labels.empty())
    for (int i = 0; i < rho.dim(); ++i) labels.push_back("v" + std::to_string(i + 1));
  PolyWeightModule<F> M(n, labels, parameter_names<F>({&beta}));
  M.set_beta(beta);
  for (int j = 0; j < n; ++j) {
    std::vector<std::vector<Polynomial<F>>> entry(rho.dim(), std::vector<Polynomial<F>>(rho.dim()));
    for (int i = 0; i < rho.dim(); ++i) entry[i][i] = M.s_var(j);
    for (const auto& [key, mat] : rho.blocks()) {
      const auto& [k, dir] = key;
      if (dir != j) continue;
      Polynomial<F> mono(F(1));
      Rational fact(1);
      for (int p = 0; p < n; ++p)
        for (int e = 1; e <= k[p]; ++e) {
          mono *= M.m_var(p);
          fact *= Rational(e);
        }
      mono *= F(Rational(1) / fact);
      for (int r = 0; r < rho.dim(); ++r)
        for (int c = 0; c < rho.dim(); ++c)
          if (!is_zero(mat(r, c))) entry[r][c] += Polynomial<F>(mat(r, c)) * mono;
    }
    for (int r = 0; r < rho.dim(); ++r)
      for (int c = 0; c < rho.dim(); ++c) M.add_term(j, c, r, entry[r][c]);
  }
  return M;
}

/// Graded dual: (x xi)(v) = -xi(x v), C*(m, s) = -C(m, -s - m)^T, beta* = -beta.
template <ExactField F>
PolyWeightModule<F> graded_dual(const PolyWeightModule<F>& M) {
  using P = Polynomial<F>;
  PolyWeightModule<F> D(M.n(), M.fiber(), M.params());
  D.set_degree_zero(M.degree_zero());
  std::vector<P> beta;
  for (const auto& b : M.beta()) beta.push_back(-b);
  D.set_beta(beta);
  std::vector<P> m(M.n()), s(M.n());
  for (int a = 0; a < M.n(); ++a) {
    m[a] = D.m_var(a);
    s[a] = -D.s_var(a) - D.m_var(a);
  }
  const auto vals = PolyWeightModule<F>::slots(m, s, M.params_in(D.symbols()));
  for (const auto& t : M.terms()) {
    std::optional<AffineConstraint> c;
    if (t.constraint) {
      AffineConstraint k = *t.constraint;
      for (int a = 0; a < M.n(); ++a) {
        k.m[a] = t.constraint->m[a] - t.constraint->s[a];
        k.s[a] = -t.constraint->s[a];
      }
      c = k;
    }
    D.add_term(t.dir, t.tgt, t.src, -t.coeff.template evaluate<P>(std::span<const P>(vals)), c);
  }
  auto neg = [](Offset o) {
    for (auto& x : o) x = -x;
    return o;
  };
  for (const auto& p : M.punctures()) D.add_puncture({neg(p.offset), p.fiber});
  for (const auto& l : M.localized()) {
    Localized nl{l.fiber, {}};
    for (const auto& o : l.offsets) nl.offsets.push_back(neg(o));
    D.add_localized(nl);
  }
  return D;
}

/// M^g: x acts as apply_automorphism(g, x).
/// C^g_a(m, s) = sum_b (g^-1)_{ab} C_b(g m, g s), beta^g = g^-1 beta, offsets o -> g^-1 o.
template <ExactField F>
PolyWeightModule<F> twist(const PolyWeightModule<F>& M, const LatticeAutomorphism& g) {
  using P = Polynomial<F>;
  const int n = M.n();
  if (g.n() != n) throw PreconditionError("automorphism rank does not match module");
  if (M.degree_zero()) throw UnsupportedPresentation("twisting a module over the degree-zero subalgebra");
  const IntMatrix& G = g.matrix();
  const IntMatrix& Gi = g.inverse_matrix();
  PolyWeightModule<F> T(n, M.fiber(), M.params());
  std::vector<P> beta(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (Gi(a, b)) beta[a] += P(F(Gi(a, b))) * M.beta()[b];
  for (auto& b : beta) b = b.in_context(T.symbols());
  T.set_beta(beta);
  std::vector<P> m(n), s(n);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      if (G(a, c)) {
        m[a] += P(F(G(a, c))) * T.m_var(c);
        s[a] += P(F(G(a, c))) * T.s_var(c);
      }
  const auto vals = PolyWeightModule<F>::slots(m, s, M.params_in(T.symbols()));
  for (const auto& t : M.terms()) {
    const P moved = t.coeff.template evaluate<P>(std::span<const P>(vals));
    std::optional<AffineConstraint> c;
    if (t.constraint) {
      AffineConstraint k{std::vector<long>(n, 0), std::vector<long>(n, 0), t.constraint->c};
      for (int col = 0; col < n; ++col)
        for (int b = 0; b < n; ++b) {
          k.m[col] += t.constraint->m[b] * G(b, col);
          k.s[col] += t.constraint->s[b] * G(b, col);
        }
      c = k;
    }
    for (int a = 0; a < n; ++a)
      if (Gi(a, t.dir)) T.add_term(a, t.src, t.tgt, P(F(Gi(a, t.dir))) * moved, c);
  }
  auto pull = [&](const Offset& o) {
    Offset out(n, 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) out[a] += Gi(a, b) * o[b];
    return out;
  };
  for (const auto& p : M.punctures()) T.add_puncture({pull(p.offset), p.fiber});
  for (const auto& l : M.localized()) {
    Localized nl{l.fiber, {}};
    for (const auto& o : l.offsets) nl.offsets.push_back(pull(o));
    T.add_localized(nl);
  }
  return T;
}

/// T(U, beta, gamma) over the degree-zero subalgebra of W_n (grading by the last coordinate):
/// tensor fields of the gl_{n-1}-module U in the first n-1 directions, and
/// (t^m d_n)(t^s (x) u) = gamma t^{s+m} (x) u.
template <ExactField F>
PolyWeightModule<F> gamma_module(const GLnRepData<F>& U, const std::vector<Polynomial<F>>& beta,
                                 const Polynomial<F>& gamma) {
  const int n = U.n() + 1;
  if (static_cast<int>(beta.size()) != U.n()) throw PreconditionError("beta must have n-1 entries");
  const std::vector<Polynomial<F>> g{gamma};
  PolyWeightModule<F> M(n, U.labels(), parameter_names<F>({&beta, &g}));
  M.set_degree_zero(true);
  std::vector<Polynomial<F>> full = beta;
  full.push_back(gamma);
  M.set_beta(full);
  for (int a = 0; a < U.n(); ++a)
    for (int i = 0; i < U.dim(); ++i)
      for (int j = 0; j < U.dim(); ++j) {
        Polynomial<F> c = i == j ? M.s_var(a) : Polynomial<F>();
        for (int p = 0; p < U.n(); ++p)
          if (!is_zero(U.E(p, a)(i, j))) c += Polynomial<F>(U.E(p, a)(i, j)) * M.m_var(p);
        M.add_term(a, j, i, c);
      }
  // s_n equals gamma on the whole support.
  for (int i = 0; i < U.dim(); ++i) M.add_term(n - 1, i, i, M.s_var(n - 1));
  return M;
}

}  // namespace wittforge
