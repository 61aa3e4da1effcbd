#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "wittforge/enveloping/uea.hpp"
#include "wittforge/modules/constructions.hpp"

namespace wittforge {

struct CheckReport {
  std::string check;
  bool symbolic_pass = true;
  std::vector<std::string> residues;  // nonzero symbolic residues
  int window_checked = 0;
  std::vector<std::string> window_failures;
  std::vector<std::string> notes;
  bool pass() const { return symbolic_pass && window_failures.empty(); }
};

inline int default_window(int n) { return n == 1 ? 4 : 1; }

namespace detail {

template <ExactField F>
std::string entry_label(const PolyWeightModule<F>& M, int r, int c) {
  return M.fiber()[r] + "<-" + M.fiber()[c];
}

/// Names for a check context: groups of per-direction symbols followed by module parameters.
inline std::vector<std::string> check_symbols(int n, const std::vector<std::string>& stems,
                                              const std::vector<std::string>& params) {
  std::vector<std::string> names;
  for (const auto& stem : stems) {
    if (n == 1) {
      names.push_back(stem);
    } else {
      for (int a = 1; a <= n; ++a) names.push_back(stem + std::to_string(a));
    }
  }
  names.insert(names.end(), params.begin(), params.end());
  return names;
}

template <class P>
std::vector<P> sum(const std::vector<P>& a, const std::vector<P>& b) {
  std::vector<P> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

/// Memoized concrete action matrices.
template <ExactField F>
class MatrixCache {
 public:
  explicit MatrixCache(const PolyWeightModule<F>& M) : M_(M) {}
  const MatrixX<Polynomial<F>>& get(int dir, const Offset& m, const Offset& o) {
    auto key = std::make_tuple(dir, m, o);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, M_.concrete_matrix(dir, m, o)).first;
    return it->second;
  }

 private:
  const PolyWeightModule<F>& M_;
  std::map<std::tuple<int, Offset, Offset>, MatrixX<Polynomial<F>>> cache_;
};

}  // namespace detail

/// [x, y] v = x(y v) - y(x v) for x = t^m d_a, y = t^{m'} d_b:
/// m'_a C_b(m+m', s) - m_b C_a(m+m', s) = C_a(m, s+m') C_b(m', s) - C_b(m', s+m) C_a(m, s).
/// Symbolic in m, m', s and parameters for the generic part; exhaustive on a
/// concrete window when the presentation has constraints or punctures.
template <ExactField F>
CheckReport check_module_axioms(const PolyWeightModule<F>& M, std::optional<int> window = std::nullopt) {
  using P = Polynomial<F>;
  const int n = M.n();
  CheckReport rep;
  rep.check = "module_axioms";
  const auto ctx = make_symbols(detail::check_symbols(n, {"m", "mp", "s"}, M.params()));
  std::vector<P> m(n), mp(n), s(n);
  for (int a = 0; a < n; ++a) {
    m[a] = P::variable(ctx, a);
    mp[a] = P::variable(ctx, n + a);
    s[a] = P::variable(ctx, 2 * n + a);
  }
  if (M.degree_zero()) {
    m[n - 1] = P();
    mp[n - 1] = P();
  }
  const auto params = M.params_in(ctx);
  auto C = [&](int dir, const std::vector<P>& mv, const std::vector<P>& sv) {
    return M.generic_matrix(dir, PolyWeightModule<F>::slots(mv, sv, params));
  };
  const auto mm = detail::sum(m, mp);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const MatrixX<P> lhs = mp[a] * C(b, mm, s) - m[b] * C(a, mm, s);
      const MatrixX<P> rhs = multiply<P>(C(a, m, detail::sum(s, mp)), C(b, mp, s)) -
                             multiply<P>(C(b, mp, detail::sum(s, m)), C(a, m, s));
      for (int r = 0; r < M.dim(); ++r)
        for (int c = 0; c < M.dim(); ++c) {
          const P res = lhs(r, c) - rhs(r, c);
          if (!res.is_zero()) {
            rep.symbolic_pass = false;
            rep.residues.push_back("a=" + std::to_string(a + 1) + " b=" + std::to_string(b + 1) + " " +
                                   detail::entry_label(M, r, c) + ": " + res.to_string());
          }
        }
    }

  if (!M.has_exceptions()) return rep;
  const int radius = window.value_or(default_window(n));
  detail::MatrixCache<F> cache(M);
  const auto box = offset_box(n, radius);
  for (const auto& mv : box) {
    if (M.degree_zero() && mv[n - 1] != 0) continue;
    for (const auto& mpv : box) {
      if (M.degree_zero() && mpv[n - 1] != 0) continue;
      const Offset msum = offset_add(mv, mpv);
      for (const auto& o : box) {
        if (M.degree_zero() && o[n - 1] != 0) continue;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            MatrixX<P> lhs = P(F(mpv[a])) * cache.get(b, msum, o) - P(F(mv[b])) * cache.get(a, msum, o);
            MatrixX<P> rhs = multiply<P>(cache.get(a, mv, offset_add(o, mpv)), cache.get(b, mpv, o)) -
                             multiply<P>(cache.get(b, mpv, offset_add(o, mv)), cache.get(a, mv, o));
            ++rep.window_checked;
            for (int r = 0; r < M.dim(); ++r)
              for (int c = 0; c < M.dim(); ++c) {
                if (!M.component_exists(c, o)) continue;
                const P res = lhs(r, c) - rhs(r, c);
                if (!res.is_zero())
                  rep.window_failures.push_back("m=" + offset_to_string(mv) + " m'=" + offset_to_string(mpv) +
                                                " offset=" + offset_to_string(o) + " a=" + std::to_string(a + 1) +
                                                " b=" + std::to_string(b + 1) + " " + detail::entry_label(M, r, c) +
                                                ": " + res.to_string());
              }
          }
      }
    }
  }
  return rep;
}

/// Leibniz compatibility with the identity A-action t^r: C_a(m, s + r) - C_a(m, s) = r_a I.
template <ExactField F>
CheckReport check_aw_compat(const PolyWeightModule<F>& M) {
  using P = Polynomial<F>;
  const int n = M.n();
  CheckReport rep;
  rep.check = "aw_compat";
  if (M.has_exceptions()) {
    rep.symbolic_pass = false;
    rep.notes.push_back("presentation has punctures or constraint terms; the identity A-action is not defined");
    return rep;
  }
  const auto ctx = make_symbols(detail::check_symbols(n, {"m", "r", "s"}, M.params()));
  std::vector<P> m(n), r(n), s(n);
  for (int a = 0; a < n; ++a) {
    m[a] = P::variable(ctx, a);
    r[a] = P::variable(ctx, n + a);
    s[a] = P::variable(ctx, 2 * n + a);
  }
  if (M.degree_zero()) {
    m[n - 1] = P();
    r[n - 1] = P();
  }
  const auto params = M.params_in(ctx);
  for (int a = 0; a < n; ++a) {
    const auto shifted = M.generic_matrix(a, PolyWeightModule<F>::slots(m, detail::sum(s, r), params));
    const auto base = M.generic_matrix(a, PolyWeightModule<F>::slots(m, s, params));
    for (int i = 0; i < M.dim(); ++i)
      for (int j = 0; j < M.dim(); ++j) {
        P res = shifted(i, j) - base(i, j);
        if (i == j) res -= r[a];
        if (!res.is_zero()) {
          rep.symbolic_pass = false;
          rep.residues.push_back("a=" + std::to_string(a + 1) + " " + detail::entry_label(M, i, j) + ": " +
                                 res.to_string());
        }
      }
  }
  return rep;
}

/// Image of one basis vector under a UEA element, with the weight kept symbolic.
template <ExactField F>
struct SymbolicModuleVector {
  SymbolContext symbols;
  std::vector<std::pair<Polynomial<F>, VectorX<Polynomial<F>>>> parts;  // (weight, fiber coefficients)

  bool is_zero() const {
    for (const auto& [w, v] : parts)
      if (!is_zero_vector<Polynomial<F>>(v)) return false;
    return true;
  }
};

/// Applies u (over W_1 at a generic point) to the generic vector v_{src} at weight
/// `weight_symbol`; words act right to left, coefficients become polynomials in the
/// index symbols, the weight symbol and the module parameters. Exceptional terms are ignored.
template <ExactField F>
SymbolicModuleVector<F> apply_uea(const UEAElement<PolyQ>& u, const PolyWeightModule<F>& M,
                                  const std::string& weight_symbol, int src) {
  using P = Polynomial<F>;
  if (M.n() != 1) throw ContextMismatch("apply_uea needs a W_1-module");
  if (!u.algebra()) return {};
  const auto& alg = *u.algebra();
  std::vector<std::string> names;
  const auto& wctx = alg.weights().front().context();
  if (wctx) names = *wctx;
  if (std::find(names.begin(), names.end(), weight_symbol) != names.end())
    throw PreconditionError("weight symbol '" + weight_symbol + "' clashes with an index symbol");
  names.push_back(weight_symbol);
  for (const auto& p : M.params())
    if (std::find(names.begin(), names.end(), p) == names.end()) names.push_back(p);
  const auto ctx = make_symbols(names);
  const auto params = M.params_in(ctx);

  SymbolicModuleVector<F> out;
  out.symbols = ctx;
  for (const auto& [word, c] : u.terms()) {
    P weight = P::variable(ctx, weight_symbol);
    VectorX<P> vec = zero_vector<P>(M.dim());
    vec(src) = map_coefficients<F>(c).in_context(ctx);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      const P m = map_coefficients<F>(alg.phi(*it)).in_context(ctx);
      const auto mat = M.generic_matrix(0, PolyWeightModule<F>::slots({m}, {weight}, params));
      vec = multiply<P>(mat, vec);
      weight += m;
    }
    auto part = std::find_if(out.parts.begin(), out.parts.end(), [&](const auto& x) { return x.first == weight; });
    if (part == out.parts.end())
      out.parts.emplace_back(weight, vec);
    else
      part->second += vec;
  }
  return out;
}

struct AnnihilationWitness {
  long k = 0, s = 0, p = 0;
  std::string entry;
  std::string value;
};

struct AnnihilationCertificate {
  int order = 0;
  bool symbolic_zero = true;
  std::vector<std::string> residues;
  int window_checked = 0;
  std::vector<std::string> window_failures;
  std::optional<AnnihilationWitness> witness;
  bool pass() const { return symbolic_zero && window_failures.empty(); }
};

/// Does Omega^{(m)}_{k,s} kill M? Symbolic in k, s, the weight p and the parameters
/// for the generic part; concrete window for exceptional presentations.
template <ExactField F>
AnnihilationCertificate annihilates(int order, const PolyWeightModule<F>& M, std::optional<int> window = std::nullopt) {
  using P = Polynomial<F>;
  if (M.n() != 1) throw PreconditionError("differentiators act on W_1-modules");
  AnnihilationCertificate cert;
  cert.order = order;
  const auto alg = symbolic_witt_algebra({"k", "s"});
  const auto& lat = alg->lattice();
  const auto omega = differentiator(alg, order, lat.generator("k"), lat.generator("s"), lat.generator("1"));
  for (int src = 0; src < M.dim(); ++src) {
    const auto image = apply_uea(omega, M, "p", src);
    for (const auto& [w, vec] : image.parts)
      for (int r = 0; r < M.dim(); ++r) {
        if (vec(r).is_zero()) continue;
        cert.symbolic_zero = false;
        const std::string entry = detail::entry_label(M, r, src);
        cert.residues.push_back(entry + ": " + vec(r).to_string());
        if (cert.witness) continue;
        for (const auto& pt : offset_box(3, 3)) {
          const std::map<std::string, F, std::less<>> at{{"k", F(pt[0])}, {"s", F(pt[1])}, {"p", F(pt[2])}};
          std::vector<P> vals;
          for (const auto& name : *image.symbols) {
            auto it = at.find(name);
            vals.push_back(it != at.end() ? P(it->second) : P::variable(image.symbols, name));
          }
          const P v = vec(r).template evaluate<P>(std::span<const P>(vals));
          if (!v.is_zero()) {
            cert.witness = AnnihilationWitness{pt[0], pt[1], pt[2], entry, v.to_string()};
            break;
          }
        }
      }
  }
  if (!M.has_exceptions()) return cert;
  const int radius = window.value_or(default_window(1));
  detail::MatrixCache<F> cache(M);
  for (long k = -radius; k <= radius; ++k)
    for (long s = -radius; s <= radius; ++s)
      for (long o = -radius; o <= radius; ++o) {
        MatrixX<P> total = zero_matrix<P>(M.dim(), M.dim());
        for (int i = 0; i <= order; ++i) {
          Rational c = binomial(order, i);
          if (i % 2) c = -c;
          const auto& inner = cache.get(0, {s + i}, {o});
          const auto& outer = cache.get(0, {k - i}, {o + s + i});
          total += P(F(c)) * multiply<P>(outer, inner);
        }
        ++cert.window_checked;
        for (int r = 0; r < M.dim(); ++r)
          for (int c = 0; c < M.dim(); ++c)
            if (M.component_exists(c, {o}) && !total(r, c).is_zero())
              cert.window_failures.push_back("k=" + std::to_string(k) + " s=" + std::to_string(s) +
                                             " offset=" + std::to_string(o) + " " + detail::entry_label(M, r, c) +
                                             ": " + total(r, c).to_string());
      }
  return cert;
}

struct WeightReport {
  std::vector<std::pair<Offset, int>> dims;
  int max_dim = 0;
  bool uniform = true;
};

template <ExactField F>
WeightReport weight_report(const PolyWeightModule<F>& M, int radius) {
  WeightReport rep;
  for (const auto& o : offset_box(M.n(), radius)) {
    if (M.degree_zero() && o[M.n() - 1] != 0) continue;
    const int d = M.weight_dim(o);
    if (!rep.dims.empty() && d != rep.dims.front().second) rep.uniform = false;
    rep.max_dim = std::max(rep.max_dim, d);
    rep.dims.emplace_back(o, d);
  }
  return rep;
}

/// Ranks of H^0..H^n of the de Rham complex restricted to weight beta + w.
inline std::vector<int> de_rham_homology(int n, const std::vector<Rational>& beta, const Offset& w) {
  if (static_cast<int>(beta.size()) != n || static_cast<int>(w.size()) != n)
    throw PreconditionError("beta and weight must have n entries");
  std::vector<Rational> s(n);
  for (int a = 0; a < n; ++a) s[a] = beta[a] + Rational(w[a]);
  std::vector<int> rk(n + 1, 0);  // rk[k] = rank of d: Omega^k -> Omega^{k+1}
  for (int k = 0; k < n; ++k) rk[k] = rank<Rational>(de_rham_matrix<Rational>(n, k, s));
  std::vector<int> h(n + 1);
  for (int k = 0; k <= n; ++k) {
    const int dimk = static_cast<int>(binomial(n, k).to_long());
    h[k] = dimk - rk[k] - (k > 0 ? rk[k - 1] : 0);
  }
  return h;
}

/// d o d = 0 with symbolic weight, and d (x w) = x (d w) for every t^m d_a with
/// |m|_inf <= radius at symbolic weight s.
inline CheckReport check_de_rham(int n, int radius = 2) {
  using P = PolyQ;
  CheckReport rep;
  rep.check = "de_rham";
  std::vector<std::string> names;
  for (int a = 1; a <= n; ++a) names.push_back("b" + std::to_string(a));
  const auto bctx = make_symbols(names);
  std::vector<P> beta;
  for (int a = 0; a < n; ++a) beta.push_back(P::variable(bctx, a));
  std::vector<PolyWeightModule<Rational>> forms;
  for (int k = 0; k <= n; ++k) forms.push_back(omega_forms<Rational>(n, k, beta));
  const auto& ctx = forms[0].symbols();
  std::vector<P> s(n);
  for (int a = 0; a < n; ++a) s[a] = forms[0].s_var(a);
  const auto params = forms[0].params_in(ctx);
  for (int k = 0; k + 1 < n; ++k) {
    const auto dd = multiply<P>(de_rham_matrix<P>(n, k + 1, s), de_rham_matrix<P>(n, k, s));
    if (!is_zero_matrix<P>(dd)) {
      rep.symbolic_pass = false;
      rep.residues.push_back("d o d != 0 on " + std::to_string(k) + "-forms");
    }
  }
  for (int k = 0; k < n; ++k)
    for (const auto& mo : offset_box(n, radius)) {
      std::vector<P> m(n);
      for (int a = 0; a < n; ++a) m[a] = P(Rational(mo[a])).with_context(ctx);
      const auto Dk = de_rham_matrix<P>(n, k, s);
      const auto Dk_shift = de_rham_matrix<P>(n, k, detail::sum(s, m));
      for (int a = 0; a < n; ++a) {
        const auto Ck = forms[k].generic_matrix(a, PolyWeightModule<Rational>::slots(m, s, params));
        const auto Ck1 = forms[k + 1].generic_matrix(a, PolyWeightModule<Rational>::slots(m, s, params));
        const MatrixX<P> diff = multiply<P>(Dk_shift, Ck) - multiply<P>(Ck1, Dk);
        ++rep.window_checked;
        if (!is_zero_matrix<P>(diff))
          rep.window_failures.push_back("k=" + std::to_string(k) + " m=" + offset_to_string(mo) +
                                        " a=" + std::to_string(a + 1));
      }
    }
  return rep;
}

}  // namespace wittforge
