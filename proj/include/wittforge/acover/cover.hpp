#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wittforge/error.hpp"
#include "wittforge/modules/checks.hpp"

namespace wittforge {

inline const SymbolContext& mode_symbols() {
  static const SymbolContext ctx = make_symbols({"m"});
  return ctx;
}

/// Function of the Fourier mode m with values in the fiber: a polynomial part
/// plus finitely many corrections.
template <ExactField F>
class QuasiPolyVector {
 public:
  explicit QuasiPolyVector(int fiber_dim = 0) : poly_(zero_matrix<F>(fiber_dim, 1)) {}

  int fiber_dim() const { return static_cast<int>(poly_.rows()); }
  /// Highest m-degree with a nonzero coefficient, -1 for a zero polynomial part.
  int degree() const {
    for (Eigen::Index d = poly_.cols() - 1; d >= 0; --d)
      for (Eigen::Index r = 0; r < poly_.rows(); ++r)
        if (!is_zero(poly_(r, d))) return static_cast<int>(d);
    return -1;
  }
  const MatrixX<F>& poly() const { return poly_; }
  const std::map<long, VectorX<F>>& exceptional() const { return exceptional_; }

  F poly_coeff(int r, int d) const { return d < poly_.cols() ? poly_(r, d) : F(0); }
  void add_poly(int r, int d, const F& c) {
    if (is_zero(c)) return;
    if (d >= poly_.cols()) {
      MatrixX<F> grown = zero_matrix<F>(poly_.rows(), d + 1);
      grown.leftCols(poly_.cols()) = poly_;
      poly_ = grown;
    }
    poly_(r, d) += c;
  }
  void add_correction(long m, int r, const F& c) {
    if (is_zero(c)) return;
    auto [it, inserted] = exceptional_.try_emplace(m, zero_vector<F>(fiber_dim()));
    it->second(r) += c;
    if (is_zero_vector<F>(it->second)) exceptional_.erase(it);
  }

  /// Component r of the polynomial part as a polynomial in the mode symbol.
  Polynomial<F> poly_component(int r) const {
    Polynomial<F> out(mode_symbols(), F(0));
    for (Eigen::Index d = 0; d < poly_.cols(); ++d) {
      if (is_zero(poly_(r, d))) continue;
      Exponents x;
      x.e[0] = static_cast<int>(d);
      x.degree = static_cast<int>(d);
      out += Polynomial<F>::monomial(mode_symbols(), x, poly_(r, d));
    }
    return out;
  }
  void set_poly_component(int r, const Polynomial<F>& p) {
    for (Eigen::Index d = 0; d < poly_.cols(); ++d) poly_(r, d) = F(0);
    for (const auto& [x, c] : p.terms()) add_poly(r, x.degree, c);
  }

  VectorX<F> poly_value(long m) const {
    VectorX<F> v = zero_vector<F>(fiber_dim());
    F pw(1);
    for (Eigen::Index d = 0; d < poly_.cols(); ++d) {
      for (Eigen::Index r = 0; r < poly_.rows(); ++r)
        if (!is_zero(poly_(r, d))) v(r) += poly_(r, d) * pw;
      pw *= F(m);
    }
    return v;
  }
  VectorX<F> value(long m) const {
    VectorX<F> v = poly_value(m);
    auto it = exceptional_.find(m);
    if (it != exceptional_.end()) v += it->second;
    return v;
  }

  bool is_zero_vector_function() const { return degree() < 0 && exceptional_.empty(); }

  QuasiPolyVector& operator+=(const QuasiPolyVector& o) {
    for (Eigen::Index d = 0; d < o.poly_.cols(); ++d)
      for (Eigen::Index r = 0; r < o.poly_.rows(); ++r) add_poly(static_cast<int>(r), static_cast<int>(d), o.poly_(r, d));
    for (const auto& [m, v] : o.exceptional_)
      for (Eigen::Index r = 0; r < v.size(); ++r) add_correction(m, static_cast<int>(r), v(r));
    return *this;
  }
  QuasiPolyVector scaled(const F& c) const {
    QuasiPolyVector out(fiber_dim());
    for (Eigen::Index d = 0; d < poly_.cols(); ++d)
      for (Eigen::Index r = 0; r < poly_.rows(); ++r) out.add_poly(static_cast<int>(r), static_cast<int>(d), poly_(r, d) * c);
    for (const auto& [m, v] : exceptional_)
      for (Eigen::Index r = 0; r < v.size(); ++r) out.add_correction(m, static_cast<int>(r), v(r) * c);
    return out;
  }

  std::string to_string(const std::vector<std::string>& labels) const {
    std::string out;
    for (int r = 0; r < fiber_dim(); ++r) {
      const auto p = poly_component(r);
      if (p.is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + p.to_string() + ")*" + labels[r];
    }
    for (const auto& [m, v] : exceptional_)
      for (int r = 0; r < fiber_dim(); ++r)
        if (!is_zero(v(r))) {
          if (!out.empty()) out += " + ";
          out += "[m=" + std::to_string(m) + "](" + scalar_text(v(r)) + ")*" + labels[r];
        }
    return out.empty() ? "0" : out;
  }

 private:
  MatrixX<F> poly_;
  std::map<long, VectorX<F>> exceptional_;
};

/// psi(e_k, u_{j,t}) expressed in a cover basis.
template <ExactField F>
struct PsiWitness {
  long k = 0;
  long j = 0;
  int t = 0;
  VectorX<F> coefficients;
};

/// One coordinate of the finite space holding the cover at a weight.
struct CoverColumn {
  bool polynomial = true;
  int degree = 0;  // polynomial columns
  long mode = 0;   // correction columns
  int fiber = 0;
};

template <ExactField F>
struct CoverBasis {
  long weight = 0;
  int degree = 0;
  std::vector<CoverColumn> columns;
  MatrixX<F> rows;  // reduced row echelon form, one row per basis vector
  std::vector<int> pivots;
  std::vector<std::string> labels;
  std::vector<QuasiPolyVector<F>> vectors;
  std::vector<PsiWitness<F>> witnesses;
  int rank() const { return static_cast<int>(vectors.size()); }
};

/// The A-cover of a parameter-free W_1 weight module, computed weight by weight.
template <ExactField F>
class ACover {
 public:
  using Poly = Polynomial<F>;

  explicit ACover(PolyWeightModule<F> M, std::optional<long> sample_start = std::nullopt) : M_(std::move(M)) {
    if (M_.n() != 1) throw UnsupportedPresentation("A-covers are implemented for W_1-modules only");
    if (!M_.params().empty()) throw UnsupportedPresentation("A-cover needs a parameter-free presentation");
    if (!M_.beta()[0].is_constant()) throw UnsupportedPresentation("A-cover needs a numeric beta");
    beta_ = M_.beta()[0].constant_term();
    base_degree_ = 0;
    for (const auto& t : M_.terms()) base_degree_ = std::max(base_degree_, t.coeff.total_degree());
    collect_exceptional_sources();
    long start = 0;
    for (long j : exceptional_sources_) start = std::max(start, std::abs(j) + 1);
    sample_start_ = sample_start.value_or(start);
  }

  const PolyWeightModule<F>& module() const { return M_; }
  int base_degree() const { return base_degree_; }
  const F& beta() const { return beta_; }
  const std::vector<long>& exceptional_sources() const { return exceptional_sources_; }

  std::vector<long> generic_samples() const {
    std::vector<long> out;
    for (long j = sample_start_; static_cast<int>(out.size()) <= base_degree_; ++j)
      if (!std::binary_search(exceptional_sources_.begin(), exceptional_sources_.end(), j)) out.push_back(j);
    return out;
  }

  bool localized(int r) const {
    for (const auto& l : M_.localized())
      if (l.fiber == r) return true;
    return false;
  }

  /// Modes m at which a weight-w cover element may carry a correction.
  std::vector<long> slot_modes(long w) const {
    std::set<long> modes;
    for (const auto& l : M_.localized())
      for (const auto& o : l.offsets) modes.insert(o[0] - w);
    for (const auto& t : M_.terms()) {
      if (!t.constraint) continue;
      const long a = t.constraint->m[0], b = t.constraint->s[0], c = t.constraint->c;
      if (a != 0 && a == b && c % a == 0) modes.insert(c / a - w);
    }
    return {modes.begin(), modes.end()};
  }

  /// m -> e_{k+m} u_{j,t}.
  QuasiPolyVector<F> psi(long k, long j, int t) const {
    const long w = k + j;
    QuasiPolyVector<F> out(M_.dim());
    if (!M_.component_exists(t, {j})) return out;
    const Poly X = Poly::variable(mode_symbols(), 0);
    const std::vector<Poly> vals{Poly(F(k)) + X, Poly(beta_ + F(j))};
    for (const auto& term : M_.terms()) {
      if (term.src != t || localized(term.tgt)) continue;
      if (term.constraint && !(term.constraint->m[0] == 0 && term.constraint->fires({0}, {j}))) continue;
      out.set_poly_component(term.tgt, out.poly_component(term.tgt) + term.coeff.template evaluate<Poly>(std::span<const Poly>(vals)));
    }
    std::set<long> modes;
    for (long m : slot_modes(w)) modes.insert(m);
    for (const auto& term : M_.terms()) {
      if (!term.constraint || term.constraint->m[0] == 0) continue;
      const long a = term.constraint->m[0], b = term.constraint->s[0], c = term.constraint->c;
      const long rhs = c - b * j - a * k;
      if (rhs % a == 0) modes.insert(rhs / a);
    }
    for (long m : modes) {
      const auto mat = M_.concrete_matrix(0, {k + m}, {j});
      const VectorX<F> generic = out.poly_value(m);
      for (int r = 0; r < M_.dim(); ++r)
        if (M_.component_exists(r, {w + m})) out.add_correction(m, r, constant(mat(r, t)) - generic(r));
    }
    return out;
  }

  /// (e_p phi)(m) = e_p phi(m) - m phi(m + p) for phi of weight w.
  QuasiPolyVector<F> act_e(long p, long w, const QuasiPolyVector<F>& phi) const {
    const int dim = M_.dim();
    QuasiPolyVector<F> out(dim);
    const Poly X = Poly::variable(mode_symbols(), 0);
    const std::vector<Poly> vals{Poly(F(p)), Poly(beta_ + F(w)) + X};
    std::vector<Poly> P(dim), shifted(dim);
    const std::vector<Poly> shift{X + Poly(F(p))};
    for (int r = 0; r < dim; ++r) {
      P[r] = phi.poly_component(r);
      shifted[r] = P[r].template evaluate<Poly>(std::span<const Poly>(shift));
    }
    for (int r = 0; r < dim; ++r) {
      if (localized(r)) continue;
      Poly acc = -(X * shifted[r]);
      for (const auto& term : M_.terms()) {
        if (term.tgt != r || term.dir != 0 || !always_fires(term, p)) continue;
        acc += term.coeff.template evaluate<Poly>(std::span<const Poly>(vals)) * P[term.src];
      }
      out.set_poly_component(r, acc);
    }
    std::set<long> modes;
    for (long o : special_sources(p)) modes.insert(o - w);
    for (long m : slot_modes(w)) {
      modes.insert(m);
      modes.insert(m - p);
    }
    for (const auto& [m, v] : phi.exceptional()) {
      modes.insert(m);
      modes.insert(m - p);
    }
    for (long m : modes) {
      const auto mat = M_.concrete_matrix(0, {p}, {w + m});
      const VectorX<F> here = masked(phi.value(m), w + m);
      const VectorX<F> there = masked(phi.value(m + p), w + m + p);
      const VectorX<F> generic = out.poly_value(m);
      for (int r = 0; r < dim; ++r) {
        if (!M_.component_exists(r, {w + m + p})) continue;
        F actual = -F(m) * there(r);
        for (int c = 0; c < dim; ++c)
          if (!is_zero(here(c))) actual += constant(mat(r, c)) * here(c);
        out.add_correction(m, r, actual - generic(r));
      }
    }
    return out;
  }

  /// (t^p phi)(m) = phi(m + p).
  QuasiPolyVector<F> act_t(long p, const QuasiPolyVector<F>& phi) const {
    QuasiPolyVector<F> out(M_.dim());
    const std::vector<Poly> shift{Poly::variable(mode_symbols(), 0) + Poly(F(p))};
    for (int r = 0; r < M_.dim(); ++r)
      out.set_poly_component(r, phi.poly_component(r).template evaluate<Poly>(std::span<const Poly>(shift)));
    for (const auto& [m, v] : phi.exceptional())
      for (int r = 0; r < M_.dim(); ++r) out.add_correction(m - p, r, v(r));
    return out;
  }

  /// Evaluation at the unit function.
  ModuleVector<F> pi(long w, const QuasiPolyVector<F>& phi) const {
    ModuleVector<F> out;
    const VectorX<F> v = masked(phi.value(0), w);
    for (int r = 0; r < M_.dim(); ++r) out.add({w}, r, Poly(v(r)));
    return out;
  }

  std::vector<CoverColumn> columns(long w, int D) const {
    std::vector<CoverColumn> cols;
    for (int d = D; d >= 0; --d)
      for (int r = 0; r < M_.dim(); ++r)
        if (!localized(r)) cols.push_back({true, d, 0, r});
    for (long m : slot_modes(w))
      for (int r = 0; r < M_.dim(); ++r)
        if (M_.component_exists(r, {w + m})) cols.push_back({false, 0, m, r});
    return cols;
  }

  std::string column_label(const CoverColumn& c, long w) const {
    const auto& f = M_.fiber()[c.fiber];
    if (c.polynomial) return f + ".m^" + std::to_string(c.degree);
    return f + "@" + std::to_string(w + c.mode);
  }

  /// Coordinates of phi in the weight-w space of degree D, or nothing when phi does not fit.
  std::optional<VectorX<F>> encode(const QuasiPolyVector<F>& phi, long w, int D) const {
    if (phi.degree() > D) return std::nullopt;
    for (int r = 0; r < M_.dim(); ++r)
      if (localized(r) && !phi.poly_component(r).is_zero()) return std::nullopt;
    const auto cols = columns(w, D);
    VectorX<F> out = zero_vector<F>(static_cast<Eigen::Index>(cols.size()));
    std::set<std::pair<long, int>> used;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const auto& c = cols[i];
      if (c.polynomial) {
        out(static_cast<Eigen::Index>(i)) = phi.poly_coeff(c.fiber, c.degree);
      } else {
        auto it = phi.exceptional().find(c.mode);
        if (it != phi.exceptional().end()) out(static_cast<Eigen::Index>(i)) = it->second(c.fiber);
        used.insert({c.mode, c.fiber});
      }
    }
    for (const auto& [m, v] : phi.exceptional())
      for (int r = 0; r < M_.dim(); ++r)
        if (!is_zero(v(r)) && M_.component_exists(r, {w + m}) && !used.count({m, r})) return std::nullopt;
    return out;
  }

  QuasiPolyVector<F> decode(const VectorX<F>& x, long w, int D) const {
    const auto cols = columns(w, D);
    QuasiPolyVector<F> out(M_.dim());
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const F& c = x(static_cast<Eigen::Index>(i));
      if (cols[i].polynomial)
        out.add_poly(cols[i].fiber, cols[i].degree, c);
      else
        out.add_correction(cols[i].mode, cols[i].fiber, c);
    }
    return out;
  }

  /// Basis of span{psi(e_{w-j}, u_{j,t})}: generic j samples recover the whole
  /// polynomial family in j, exceptional j are adjoined, then row reduction.
  CoverBasis<F> basis(long w, int D) const {
    for (const auto& t : M_.terms())
      if (t.constraint) {
        const long a = t.constraint->m[0], b = t.constraint->s[0];
        if (a != 0 && a != b)
          throw UnsupportedPresentation("constraint ties the generator to the source offset; exceptional modes are unbounded");
      }
    std::vector<long> js = generic_samples();
    js.insert(js.end(), exceptional_sources_.begin(), exceptional_sources_.end());
    CoverBasis<F> out;
    out.weight = w;
    out.degree = D;
    out.columns = columns(w, D);
    std::vector<PsiWitness<F>> gens;
    std::vector<VectorX<F>> coords;
    for (long j : js)
      for (int t = 0; t < M_.dim(); ++t) {
        auto x = encode(psi(w - j, j, t), w, D);
        if (!x) throw ClosureFailure("psi generator does not fit the cover coordinates at degree " + std::to_string(D));
        gens.push_back({w - j, j, t, {}});
        coords.push_back(*x);
      }
    MatrixX<F> G = zero_matrix<F>(static_cast<Eigen::Index>(coords.size()), static_cast<Eigen::Index>(out.columns.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) G.row(static_cast<Eigen::Index>(i)) = coords[i].transpose();
    const auto ech = row_reduce<F>(G, false);
    const int rk = ech.rank();
    out.rows = ech.reduced.topRows(rk);
    out.pivots.assign(ech.pivots.begin(), ech.pivots.begin() + rk);
    for (int i = 0; i < rk; ++i) {
      out.labels.push_back(column_label(out.columns[out.pivots[i]], w));
      out.vectors.push_back(decode(out.rows.row(i).transpose(), w, D));
    }
    for (std::size_t g = 0; g < gens.size(); ++g) {
      gens[g].coefficients = coordinates_in(out, coords[g]).value();
      out.witnesses.push_back(gens[g]);
    }
    return out;
  }

  /// Coefficients of x in the echelon rows, if x lies in their span.
  static std::optional<VectorX<F>> coordinates_in(const CoverBasis<F>& B, const VectorX<F>& x) {
    VectorX<F> c = zero_vector<F>(B.rank());
    VectorX<F> rest = x;
    for (int i = 0; i < B.rank(); ++i) {
      c(i) = x(B.pivots[i]);
      if (!is_zero(c(i))) rest -= c(i) * B.rows.row(i).transpose();
    }
    if (!is_zero_vector<F>(rest)) return std::nullopt;
    return c;
  }

 private:
  static F constant(const Poly& p) {
    if (!p.is_constant()) throw UnsupportedPresentation("action coefficient is not numeric");
    return p.constant_term();
  }

  VectorX<F> masked(VectorX<F> v, long offset) const {
    for (int r = 0; r < M_.dim(); ++r)
      if (!M_.component_exists(r, {offset})) v(r) = F(0);
    return v;
  }

  /// Term of e_p that acts at every source offset.
  static bool always_fires(const ActionTerm<F>& t, long p) {
    if (!t.constraint) return true;
    return t.constraint->s[0] == 0 && t.constraint->m[0] * p == t.constraint->c;
  }

  /// Source offsets o where e_p acts non-generically from o or into o + p.
  std::set<long> special_sources(long p) const {
    std::set<long> out;
    for (const auto& pc : M_.punctures()) {
      out.insert(pc.offset[0]);
      out.insert(pc.offset[0] - p);
    }
    for (const auto& l : M_.localized())
      for (const auto& o : l.offsets) {
        out.insert(o[0]);
        out.insert(o[0] - p);
      }
    for (const auto& t : M_.terms()) {
      if (!t.constraint || t.constraint->s[0] == 0) continue;
      const long rhs = t.constraint->c - t.constraint->m[0] * p;
      if (rhs % t.constraint->s[0] == 0) out.insert(rhs / t.constraint->s[0]);
    }
    return out;
  }

  void collect_exceptional_sources() {
    std::set<long> js;
    for (const auto& pc : M_.punctures()) js.insert(pc.offset[0]);
    for (const auto& l : M_.localized())
      for (const auto& o : l.offsets) js.insert(o[0]);
    for (const auto& t : M_.terms()) {
      if (!t.constraint || t.constraint->m[0] != 0 || t.constraint->s[0] == 0) continue;
      if (t.constraint->c % t.constraint->s[0] == 0) js.insert(t.constraint->c / t.constraint->s[0]);
    }
    exceptional_sources_.assign(js.begin(), js.end());
  }

  PolyWeightModule<F> M_;
  F beta_;
  int base_degree_ = 0;
  long sample_start_ = 0;
  std::vector<long> exceptional_sources_;
};

inline int degree_ceiling(int base) {
  if (const char* env = std::getenv("WITTFORGE_DEGREE_CEILING")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      throw PreconditionError("WITTFORGE_DEGREE_CEILING must be an integer");
    }
  }
  return 4 * std::max(base, 1);
}

/// Cover with its induced action, re-expressed as a weight module whose
/// coefficients are polynomial in the generator exponent and the weight.
template <ExactField F>
struct CoverModule {
  int degree = 0;
  int base_degree = 0;
  long window = 0;
  std::vector<std::string> labels;
  std::map<long, CoverBasis<F>> bases;
  PolyWeightModule<F> action;
  MatrixX<Polynomial<F>> a_action;  // t^p in the slots (m, s) of `action`
  std::vector<std::string> attempts;
};

template <ExactField F>
MatrixX<F> induced_e_matrix(const ACover<F>& C, const CoverBasis<F>& from, const CoverBasis<F>& to, long p) {
  MatrixX<F> out = zero_matrix<F>(to.rank(), from.rank());
  for (int i = 0; i < from.rank(); ++i) {
    const auto x = C.encode(C.act_e(p, from.weight, from.vectors[i]), to.weight, to.degree);
    const auto c = x ? ACover<F>::coordinates_in(to, *x) : std::nullopt;
    if (!c)
      throw ClosureFailure("e_" + std::to_string(p) + " applied to " + from.labels[i] + " at weight offset " +
                           std::to_string(from.weight) + " leaves the cover");
    out.col(i) = *c;
  }
  return out;
}

template <ExactField F>
MatrixX<F> induced_t_matrix(const ACover<F>& C, const CoverBasis<F>& from, const CoverBasis<F>& to, long p) {
  MatrixX<F> out = zero_matrix<F>(to.rank(), from.rank());
  for (int i = 0; i < from.rank(); ++i) {
    const auto x = C.encode(C.act_t(p, from.vectors[i]), to.weight, to.degree);
    const auto c = x ? ACover<F>::coordinates_in(to, *x) : std::nullopt;
    if (!c)
      throw ClosureFailure("t^" + std::to_string(p) + " applied to " + from.labels[i] + " at weight offset " +
                           std::to_string(from.weight) + " leaves the cover");
    out.col(i) = *c;
  }
  return out;
}

namespace detail {

/// Polynomial of total degree <= D in (m, s) through the samples ((p, s), value), if one exists.
template <ExactField F>
std::optional<Polynomial<F>> fit_bivariate(const std::vector<std::pair<std::pair<long, F>, F>>& samples, int D,
                                           const SymbolContext& ctx, int m_slot, int s_slot) {
  std::vector<std::pair<int, int>> monos;
  for (int d = 0; d <= D; ++d)
    for (int a = d; a >= 0; --a) monos.push_back({a, d - a});
  MatrixX<F> A = zero_matrix<F>(static_cast<Eigen::Index>(samples.size()), static_cast<Eigen::Index>(monos.size()));
  VectorX<F> b = zero_vector<F>(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& [pt, v] = samples[i];
    for (std::size_t c = 0; c < monos.size(); ++c) {
      F x(1);
      for (int e = 0; e < monos[c].first; ++e) x *= F(pt.first);
      for (int e = 0; e < monos[c].second; ++e) x *= pt.second;
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = x;
    }
    b(static_cast<Eigen::Index>(i)) = v;
  }
  const auto sol = solve<F>(A, b);
  if (!sol) return std::nullopt;
  Polynomial<F> out(ctx, F(0));
  for (std::size_t c = 0; c < monos.size(); ++c) {
    Exponents x;
    x.e[m_slot] = monos[c].first;
    x.e[s_slot] = monos[c].second;
    x.degree = monos[c].first + monos[c].second;
    out += Polynomial<F>::monomial(ctx, x, (*sol)(static_cast<Eigen::Index>(c)));
  }
  return out;
}

}  // namespace detail

/// Bases on weight offsets [-2 window, 2 window], induced e_p and t^p actions for
/// |p|, |w| <= window, fitted as polynomials of adaptive degree.
template <ExactField F>
CoverModule<F> build_cover(const ACover<F>& C, long window = 7, std::optional<int> ceiling = std::nullopt) {
  const int D0 = C.base_degree();
  const int top = ceiling.value_or(degree_ceiling(D0));
  CoverModule<F> out;
  out.base_degree = D0;
  out.window = window;
  std::string last_failure;
  for (int D = std::max(D0, 1); D <= std::max(top, 1); ++D) {
    try {
      std::map<long, CoverBasis<F>> bases;
      for (long w = -2 * window; w <= 2 * window; ++w) bases.emplace(w, C.basis(w, D));
      const auto& labels = bases.at(0).labels;
      for (const auto& [w, B] : bases)
        if (B.labels != labels)
          throw UnsupportedPresentation("cover basis changes shape at weight offset " + std::to_string(w));
      const int r = static_cast<int>(labels.size());
      PolyWeightModule<F> act(1, labels);
      act.set_beta({act.constant(C.beta())});
      using Sample = std::pair<std::pair<long, F>, F>;
      std::vector<std::vector<Sample>> e_samples(r * r), t_samples(r * r);
      for (long p = -window; p <= window; ++p)
        for (long w = -window; w <= window; ++w) {
          const auto E = induced_e_matrix(C, bases.at(w), bases.at(w + p), p);
          const auto T = induced_t_matrix(C, bases.at(w), bases.at(w + p), p);
          const F s = C.beta() + F(w);
          for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b) {
              e_samples[a * r + b].push_back({{p, s}, E(a, b)});
              t_samples[a * r + b].push_back({{p, s}, T(a, b)});
            }
        }
      MatrixX<Polynomial<F>> A = zero_matrix<Polynomial<F>>(r, r);
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
          const auto e = detail::fit_bivariate<F>(e_samples[a * r + b], D, act.symbols(), act.m_slot(0), act.s_slot(0));
          const auto t = detail::fit_bivariate<F>(t_samples[a * r + b], D, act.symbols(), act.m_slot(0), act.s_slot(0));
          if (!e || !t)
            throw ClosureFailure("induced action entry " + labels[a] + "<-" + labels[b] +
                                 " is not polynomial of degree " + std::to_string(D));
          act.add_term(0, b, a, *e);
          A(a, b) = *t;
        }
      out.degree = D;
      out.labels = labels;
      out.bases = std::move(bases);
      out.action = std::move(act);
      out.a_action = std::move(A);
      out.attempts.push_back("degree " + std::to_string(D) + ": closed");
      return out;
    } catch (const ClosureFailure& e) {
      last_failure = e.what();
      out.attempts.push_back("degree " + std::to_string(D) + ": " + last_failure);
    }
  }
  throw ClosureFailure("no closure up to degree ceiling " + std::to_string(top) + ": " + last_failure);
}

/// AW relations for the fitted actions: t^p t^q = t^{p+q}, t^0 = 1 and
/// [e_m, t^q] = q t^{m+q}, symbolic in m, q and s.
template <ExactField F>
CheckReport check_cover_aw(const CoverModule<F>& cov) {
  using P = Polynomial<F>;
  CheckReport rep;
  rep.check = "cover_aw";
  const auto ctx = make_symbols({"m", "q", "s"});
  const P m = P::variable(ctx, 0), q = P::variable(ctx, 1), s = P::variable(ctx, 2);
  auto A = [&](const P& pm, const P& ps) {
    const std::vector<P> vals{pm, ps};
    MatrixX<P> out = zero_matrix<P>(cov.a_action.rows(), cov.a_action.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j)
        out(i, j) = cov.a_action(i, j).template evaluate<P>(std::span<const P>(vals));
    return out;
  };
  auto C = [&](const P& pm, const P& ps) { return cov.action.generic_matrix(0, {pm, ps}); };
  auto record = [&](const std::string& what, const MatrixX<P>& diff) {
    if (!is_zero_matrix<P>(diff)) {
      rep.symbolic_pass = false;
      rep.residues.push_back(what);
    }
  };
  const auto r = cov.a_action.rows();
  record("t^0 = 1", A(P(0), s) - identity_matrix<P>(r));
  record("t^m t^q = t^(m+q)", multiply<P>(A(m, s + q), A(q, s)) - A(m + q, s));
  record("[e_m, t^q] = q t^(m+q)",
         multiply<P>(C(m, s + q), A(q, s)) - multiply<P>(A(q, s + m), C(m, s)) - q * A(m + q, s));
  return rep;
}

struct CuspidalityCertificate {
  std::vector<std::pair<long, int>> ranks;
  bool uniform = true;
  bool a_invertible = true;
  std::optional<long> offending_weight;
  int rank = 0;
  bool pass() const { return uniform && a_invertible; }
};

/// Constant rank over the window and invertible t^{+1}, t^{-1} between neighbouring weights.
template <ExactField F>
CuspidalityCertificate cuspidality_certificate(const ACover<F>& C, const CoverModule<F>& cov) {
  CuspidalityCertificate cert;
  const long W = cov.window;
  cert.rank = cov.bases.at(0).rank();
  for (long w = -W; w <= W; ++w) {
    const auto& B = cov.bases.at(w);
    cert.ranks.emplace_back(w, B.rank());
    if (B.rank() != cert.rank && !cert.offending_weight) {
      cert.uniform = false;
      cert.offending_weight = w;
    }
    if (w == W) continue;
    const auto& next = cov.bases.at(w + 1);
    const auto up = induced_t_matrix(C, B, next, 1);
    const auto down = induced_t_matrix(C, next, B, -1);
    if (up.rows() != up.cols() || !(multiply<F>(down, up) == identity_matrix<F>(B.rank()))) {
      cert.a_invertible = false;
      if (!cert.offending_weight) cert.offending_weight = w;
    }
  }
  return cert;
}

struct SurjectivityReport {
  long weight = 0;
  int cover_rank = 0;
  int pi_rank = 0;
  int span_rank = 0;  // dim of the algebra action's image at this weight
  bool pass() const { return pi_rank == span_rank; }
};

/// rank pi(cover_w) against the span of e_k u_{w-k} computed directly in M.
template <ExactField F>
SurjectivityReport pi_surjectivity(const ACover<F>& C, const CoverBasis<F>& B) {
  const auto& M = C.module();
  SurjectivityReport rep;
  rep.weight = B.weight;
  rep.cover_rank = B.rank();
  MatrixX<F> images = zero_matrix<F>(std::max(B.rank(), 1), M.dim());
  for (int i = 0; i < B.rank(); ++i) {
    const auto v = C.pi(B.weight, B.vectors[i]);
    for (int r = 0; r < M.dim(); ++r) {
      const auto c = v.coefficient({B.weight}, r);
      images(i, r) = c.is_zero() ? F(0) : c.constant_term();
    }
  }
  rep.pi_rank = rank<F>(images);
  long reach = std::abs(B.weight) + 2 * (C.base_degree() + 1) + 2;
  for (long j : C.exceptional_sources()) reach = std::max(reach, std::abs(j) + std::abs(B.weight) + 1);
  std::vector<VectorX<F>> cols;
  for (long k = -reach; k <= reach; ++k) {
    const auto mat = M.concrete_matrix(0, {k}, {B.weight - k});
    for (int t = 0; t < M.dim(); ++t) {
      VectorX<F> c(M.dim());
      for (int r = 0; r < M.dim(); ++r) c(r) = mat(r, t).is_zero() ? F(0) : mat(r, t).constant_term();
      cols.push_back(c);
    }
  }
  MatrixX<F> span = zero_matrix<F>(static_cast<Eigen::Index>(cols.size()), M.dim());
  for (std::size_t i = 0; i < cols.size(); ++i) span.row(static_cast<Eigen::Index>(i)) = cols[i].transpose();
  rep.span_rank = rank<F>(span);
  return rep;
}

struct PiStarReport {
  int samples = 0;
  std::vector<std::string> failures;
  std::vector<std::pair<long, int>> kernel_dims;  // (offset, dim ker pi*)
  std::vector<long> kernel_mismatch;              // offsets where ker pi* != {u : L u = 0}
  bool pass() const { return failures.empty() && kernel_mismatch.empty(); }
};

/// pi*(u)(phi) = -<phi(1), u> on the cover of the graded dual; checks
/// y pi*(u) = pi*(y u) on random samples and ker pi* = {u : L u = 0}.
template <ExactField F>
PiStarReport pi_star_check(const PolyWeightModule<F>& M, int samples = 100, unsigned seed = 7, long radius = 2) {
  PiStarReport rep;
  const ACover<F> Mc(M);
  const ACover<F> Dc(graded_dual(M));
  const int dim = M.dim();
  auto pair = [&](const VectorX<F>& xi, long xi_offset, const VectorX<F>& u, long u_offset) {
    F out(0);
    if (xi_offset != -u_offset) return out;
    for (int r = 0; r < dim; ++r)
      if (M.component_exists(r, {u_offset})) out += xi(r) * u(r);
    return out;
  };
  auto column = [&](const MatrixX<Polynomial<F>>& mat, int t) {
    VectorX<F> v(dim);
    for (int r = 0; r < dim; ++r) v(r) = mat(r, t).is_zero() ? F(0) : mat(r, t).constant_term();
    return v;
  };
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> small(-3, 3);
  std::uniform_int_distribution<int> fib(0, dim - 1);
  for (int i = 0; i < samples; ++i) {
    const long p = small(rng), j = small(rng), k = small(rng);
    const int t = fib(rng), tp = fib(rng);
    const long jp = -j - p - k;
    const long w = k + jp;
    VectorX<F> u = zero_vector<F>(dim);
    if (M.component_exists(t, {j})) u(t) = F(1);
    const auto phi = Dc.psi(k, jp, tp);
    const F lhs = pair(Dc.act_e(p, w, phi).value(0), w + p, u, j);
    const VectorX<F> yu = column(M.concrete_matrix(0, {p}, {j}), t);
    const F rhs = -pair(phi.value(0), w, is_zero(u(t)) ? zero_vector<F>(dim) : yu, j + p);
    ++rep.samples;
    if (!(lhs == rhs))
      rep.failures.push_back("p=" + std::to_string(p) + " u=" + M.fiber()[t] + "[" + std::to_string(j) + "] x=e_" +
                             std::to_string(k) + " xi=" + M.fiber()[tp] + "[" + std::to_string(jp) + "]");
  }
  const int D = Dc.base_degree();
  for (long o = -radius; o <= radius; ++o) {
    const auto B = Dc.basis(-o, std::max(D, 1));
    MatrixX<F> pairing = zero_matrix<F>(std::max(B.rank(), 1), dim);
    for (int i = 0; i < B.rank(); ++i) {
      const VectorX<F> v = B.vectors[i].value(0);
      for (int r = 0; r < dim; ++r)
        if (M.component_exists(r, {o})) pairing(i, r) = v(r);
    }
    std::vector<VectorX<F>> rows;
    for (int r = 0; r < dim; ++r)
      if (!M.component_exists(r, {o})) {
        VectorX<F> e = zero_vector<F>(dim);
        e(r) = F(1);
        rows.push_back(e);
      }
    long reach = std::abs(o) + 2 * (Mc.base_degree() + 1) + 2;
    for (long j : Mc.exceptional_sources()) reach = std::max(reach, std::abs(j) + std::abs(o) + 1);
    for (long k = -reach; k <= reach; ++k) {
      const auto mat = M.concrete_matrix(0, {k}, {o});
      for (int r = 0; r < dim; ++r) {
        VectorX<F> row(dim);
        for (int c = 0; c < dim; ++c) row(c) = mat(r, c).is_zero() ? F(0) : mat(r, c).constant_term();
        rows.push_back(row);
      }
    }
    MatrixX<F> killers = zero_matrix<F>(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t i = 0; i < rows.size(); ++i) killers.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    // Both kernels live in the existing components; compare them through their row spaces.
    MatrixX<F> pairing_full = pairing;
    for (int r = 0; r < dim; ++r)
      if (!M.component_exists(r, {o})) {
        pairing_full.conservativeResize(pairing_full.rows() + 1, Eigen::NoChange);
        pairing_full.row(pairing_full.rows() - 1) = zero_vector<F>(dim).transpose();
        pairing_full(pairing_full.rows() - 1, r) = F(1);
      }
    const int rk_pair = rank<F>(pairing_full), rk_kill = rank<F>(killers);
    MatrixX<F> both(pairing_full.rows() + killers.rows(), dim);
    both << pairing_full, killers;
    rep.kernel_dims.emplace_back(o, dim - rk_pair);
    if (rk_pair != rk_kill || rank<F>(both) != rk_pair) rep.kernel_mismatch.push_back(o);
  }
  return rep;
}

/// (tau, theta, eta) frame for the Virasoro-adjoint cover at weight offset w:
/// tau: m -> (w + m) u_{w+m}, theta: m -> u_{w+m}, eta: m -> [w + m = 0] z.
inline std::vector<QuasiPolyVector<Rational>> virasoro_cover_frame(long w) {
  QuasiPolyVector<Rational> tau(2), theta(2), eta(2);
  tau.add_poly(0, 1, Rational(1));
  tau.add_poly(0, 0, Rational(w));
  theta.add_poly(0, 0, Rational(1));
  eta.add_correction(-w, 1, Rational(1));
  return {tau, theta, eta};
}

/// Matrix whose columns are the frame vectors in the basis B.
template <ExactField F>
MatrixX<F> frame_matrix(const ACover<F>& C, const CoverBasis<F>& B, const std::vector<QuasiPolyVector<F>>& frame) {
  MatrixX<F> out = zero_matrix<F>(B.rank(), static_cast<Eigen::Index>(frame.size()));
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const auto x = C.encode(frame[i], B.weight, B.degree);
    const auto c = x ? ACover<F>::coordinates_in(B, *x) : std::nullopt;
    if (!c) throw PreconditionError("frame vector " + std::to_string(i) + " is not in the cover");
    out.col(static_cast<Eigen::Index>(i)) = *c;
  }
  return out;
}

/// e_p from weight w to w + p written in a frame given at each weight.
template <ExactField F>
MatrixX<F> action_in_frame(const ACover<F>& C, const CoverModule<F>& cov, long p, long w,
                           const std::function<std::vector<QuasiPolyVector<F>>(long)>& frame) {
  const auto& from = cov.bases.at(w);
  const auto& to = cov.bases.at(w + p);
  const auto E = induced_e_matrix(C, from, to, p);
  const auto Pw = frame_matrix(C, from, frame(w));
  const auto Pwp = frame_matrix(C, to, frame(w + p));
  const auto inv = inverse<F>(Pwp);
  if (!inv) throw PreconditionError("frame is not a basis");
  return multiply<F>(*inv, multiply<F>(E, Pw));
}

}  // namespace wittforge
