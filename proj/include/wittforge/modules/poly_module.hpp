#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wittforge/lie/automorphism.hpp"
#include "wittforge/scalar/linalg.hpp"
#include "wittforge/scalar/polynomial.hpp"

namespace wittforge {

/// Integer displacement of a weight from the support base point beta.
using Offset = std::vector<long>;

inline Offset offset_add(const Offset& a, const Offset& b) {
  Offset out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline std::string offset_to_string(const Offset& o) {
  std::string out = "[";
  for (std::size_t i = 0; i < o.size(); ++i) out += (i ? "," : "") + std::to_string(o[i]);
  return out + "]";
}

/// Every point of the box [-radius, radius]^n, first coordinate slowest.
inline std::vector<Offset> offset_box(int n, long radius) {
  std::vector<Offset> out;
  Offset o(n, -radius);
  while (true) {
    out.push_back(o);
    int i = n - 1;
    while (i >= 0 && o[i] == radius) o[i--] = -radius;
    if (i < 0) break;
    ++o[i];
  }
  return out;
}

/// Term applies only where m . m_coeffs + offset . s_coeffs == c (offset of the source).
struct AffineConstraint {
  std::vector<long> m;
  std::vector<long> s;
  long c = 0;

  bool fires(const Offset& mv, const Offset& o) const {
    long v = 0;
    for (std::size_t i = 0; i < m.size(); ++i) v += m[i] * mv[i];
    for (std::size_t i = 0; i < s.size(); ++i) v += s[i] * o[i];
    return v == c;
  }
  friend bool operator==(const AffineConstraint&, const AffineConstraint&) = default;
};

/// (t^m d_dir) v_src at weight s contributes coeff(m, s) v_tgt at weight s + m.
template <ExactField F>
struct ActionTerm {
  int dir = 0;
  int src = 0;
  int tgt = 0;
  Polynomial<F> coeff;
  std::optional<AffineConstraint> constraint;
};

/// Listed fiber components vanish at this offset.
struct Puncture {
  Offset offset;
  std::vector<int> fiber;
};

/// A fiber component that exists only at the listed offsets.
struct Localized {
  int fiber = 0;
  std::vector<Offset> offsets;
};

inline std::vector<std::string> module_slot_names(int n, const std::vector<std::string>& params) {
  std::vector<std::string> names;
  if (n == 1) {
    names = {"m", "s"};
  } else {
    for (int a = 1; a <= n; ++a) names.push_back("m" + std::to_string(a));
    for (int a = 1; a <= n; ++a) names.push_back("s" + std::to_string(a));
  }
  names.insert(names.end(), params.begin(), params.end());
  return names;
}

/// Weight module over W_n (n = 1 is W_1) with a finite fiber and an action
/// polynomial in the generator exponent m and the weight s = beta + offset.
template <ExactField F>
class PolyWeightModule {
 public:
  using Poly = Polynomial<F>;
  using Matrix = MatrixX<Poly>;

  PolyWeightModule() = default;
  PolyWeightModule(int n, std::vector<std::string> fiber, std::vector<std::string> params = {})
      : n_(n), fiber_(std::move(fiber)), params_(std::move(params)) {
    if (n_ < 1 || n_ > 6) throw PreconditionError("modules are supported for 1 <= n <= 6");
    if (fiber_.empty()) throw PreconditionError("fiber must be nonempty");
    ctx_ = make_symbols(module_slot_names(n_, params_));
    beta_.assign(n_, Poly(ctx_, F(0)));
  }

  int n() const { return n_; }
  std::string algebra_name() const { return n_ == 1 ? "W1" : "W" + std::to_string(n_); }
  int dim() const { return static_cast<int>(fiber_.size()); }
  const std::vector<std::string>& fiber() const { return fiber_; }
  const std::vector<std::string>& params() const { return params_; }
  const SymbolContext& symbols() const { return ctx_; }
  const std::vector<Poly>& beta() const { return beta_; }
  const std::vector<ActionTerm<F>>& terms() const { return terms_; }
  const std::vector<Puncture>& punctures() const { return punctures_; }
  const std::vector<Localized>& localized() const { return localized_; }
  /// When set, the module is over the degree-zero subalgebra of the grading by
  /// the last coordinate: generators with m_n != 0 are excluded and offsets have o_n = 0.
  bool degree_zero() const { return degree_zero_; }
  void set_degree_zero(bool v) { degree_zero_ = v; }

  bool has_exceptions() const {
    if (!punctures_.empty() || !localized_.empty()) return true;
    for (const auto& t : terms_)
      if (t.constraint) return true;
    return false;
  }

  int m_slot(int a) const { return a; }
  int s_slot(int a) const { return n_ + a; }
  Poly m_var(int a) const { return Poly::variable(ctx_, m_slot(a)); }
  Poly s_var(int a) const { return Poly::variable(ctx_, s_slot(a)); }
  Poly param(const std::string& name) const { return Poly::variable(ctx_, name); }
  Poly constant(const F& c) const { return Poly(ctx_, c); }
  Poly parse_poly(const std::string& text) const { return Poly::parse(text, ctx_); }

  void set_beta(std::vector<Poly> beta) {
    if (static_cast<int>(beta.size()) != n_) throw PreconditionError("beta must have n entries");
    for (auto& b : beta) {
      b = b.in_context(ctx_);
      const auto positions = slot_range();
      if (b.degree_in(std::span<const int>(positions)) > 0)
        throw PreconditionError("beta may depend only on parameters");
    }
    beta_ = std::move(beta);
  }

  void add_term(int dir, int src, int tgt, Poly coeff, std::optional<AffineConstraint> constraint = std::nullopt) {
    if (dir < 0 || dir >= n_ || src < 0 || src >= dim() || tgt < 0 || tgt >= dim())
      throw PreconditionError("action term index out of range");
    if (constraint && (static_cast<int>(constraint->m.size()) != n_ || static_cast<int>(constraint->s.size()) != n_))
      throw PreconditionError("constraint must have n coefficients for m and for the offset");
    coeff = coeff.in_context(ctx_);
    if (coeff.is_zero()) return;
    for (auto& t : terms_) {
      if (t.dir == dir && t.src == src && t.tgt == tgt && t.constraint == constraint) {
        t.coeff += coeff;
        std::erase_if(terms_, [](const ActionTerm<F>& x) { return x.coeff.is_zero(); });
        return;
      }
    }
    terms_.push_back({dir, src, tgt, std::move(coeff), std::move(constraint)});
  }
  void add_puncture(Puncture p) { punctures_.push_back(std::move(p)); }
  void add_localized(Localized l) { localized_.push_back(std::move(l)); }

  bool component_exists(int fiber, const Offset& o) const {
    if (degree_zero_ && o[n_ - 1] != 0) return false;
    for (const auto& p : punctures_)
      if (p.offset == o)
        for (int f : p.fiber)
          if (f == fiber) return false;
    for (const auto& l : localized_) {
      if (l.fiber != fiber) continue;
      bool found = false;
      for (const auto& x : l.offsets) found = found || x == o;
      if (!found) return false;
    }
    return true;
  }

  int weight_dim(const Offset& o) const {
    int d = 0;
    for (int i = 0; i < dim(); ++i) d += component_exists(i, o);
    return d;
  }

  /// Parameter values as variables of another symbol context (matched by name).
  std::vector<Poly> params_in(const SymbolContext& target) const {
    std::vector<Poly> out;
    for (const auto& p : params_) out.push_back(Poly::variable(target, p));
    return out;
  }

  /// Full slot vector (m, s, params) for evaluating action coefficients.
  static std::vector<Poly> slots(const std::vector<Poly>& m, const std::vector<Poly>& s, const std::vector<Poly>& params) {
    std::vector<Poly> v = m;
    v.insert(v.end(), s.begin(), s.end());
    v.insert(v.end(), params.begin(), params.end());
    return v;
  }

  /// Action matrix of t^m d_dir ignoring constraint terms and punctures
  /// (rows: target fiber, columns: source fiber).
  Matrix generic_matrix(int dir, const std::vector<Poly>& slot_values) const {
    Matrix out = zero_matrix<Poly>(dim(), dim());
    const std::span<const Poly> vals(slot_values);
    for (const auto& t : terms_)
      if (t.dir == dir && !t.constraint) out(t.tgt, t.src) += t.coeff.template evaluate<Poly>(vals);
    return out;
  }

  /// Weight s = beta + o in the module's own symbol context.
  std::vector<Poly> weight_of(const Offset& o) const {
    std::vector<Poly> s(n_);
    for (int a = 0; a < n_; ++a) s[a] = beta_[a] + constant(F(o[a]));
    return s;
  }

  /// Exact action of t^m d_dir from offset o to offset o + m, including
  /// constraint terms that fire and zeroing absent components.
  Matrix concrete_matrix(int dir, const Offset& m, const Offset& o) const {
    std::vector<Poly> mv(n_);
    for (int a = 0; a < n_; ++a) mv[a] = constant(F(m[a]));
    const auto vals = slots(mv, weight_of(o), params_in(ctx_));
    const std::span<const Poly> span(vals);
    Matrix out = zero_matrix<Poly>(dim(), dim());
    if (degree_zero_ && m[n_ - 1] != 0) return out;
    for (const auto& t : terms_)
      if (t.dir == dir && (!t.constraint || t.constraint->fires(m, o)))
        out(t.tgt, t.src) += t.coeff.template evaluate<Poly>(span);
    const Offset target = offset_add(o, m);
    for (int i = 0; i < dim(); ++i) {
      if (!component_exists(i, o))
        for (int r = 0; r < dim(); ++r) out(r, i) = Poly();
      if (!component_exists(i, target))
        for (int c = 0; c < dim(); ++c) out(i, c) = Poly();
    }
    return out;
  }

  std::string field_name() const {
    if constexpr (std::same_as<F, QuadExt>) {
      const long d = radicand();
      return d ? "Q(sqrt(" + std::to_string(d) + "))" : "Q";
    }
    return "Q";
  }

  long radicand() const {
    if constexpr (std::same_as<F, QuadExt>) {
      for (const auto& t : terms_)
        for (const auto& [x, c] : t.coeff.terms())
          if (c.radicand()) return c.radicand();
    }
    return 0;
  }

 private:
  std::vector<int> slot_range() const {
    std::vector<int> v;
    for (int i = 0; i < 2 * n_; ++i) v.push_back(i);
    return v;
  }

  int n_ = 1;
  std::vector<std::string> fiber_;
  std::vector<std::string> params_;
  SymbolContext ctx_;
  std::vector<Poly> beta_;
  std::vector<ActionTerm<F>> terms_;
  std::vector<Puncture> punctures_;
  std::vector<Localized> localized_;
  bool degree_zero_ = false;
};

/// Finite combination of basis vectors v_{offset, fiber} of a module.
template <ExactField F>
class ModuleVector {
 public:
  using Poly = Polynomial<F>;
  using Key = std::pair<Offset, int>;

  void add(const Offset& o, int fiber, const Poly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace({o, fiber}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  static ModuleVector basis(const Offset& o, int fiber, const Poly& c = Poly(F(1))) {
    ModuleVector v;
    v.add(o, fiber, c);
    return v;
  }

  const std::map<Key, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Poly coefficient(const Offset& o, int fiber) const {
    auto it = terms_.find({o, fiber});
    return it == terms_.end() ? Poly() : it->second;
  }

  ModuleVector& operator+=(const ModuleVector& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
  }
  ModuleVector& operator-=(const ModuleVector& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
    return *this;
  }
  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
  friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) { return a -= b; }
  ModuleVector scaled(const Poly& c) const {
    ModuleVector out;
    for (const auto& [k, x] : terms_) out.add(k.first, k.second, x * c);
    return out;
  }
  friend bool operator==(const ModuleVector& a, const ModuleVector& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    for (auto j = b.terms_.begin(); j != b.terms_.end(); ++i, ++j)
      if (i->first != j->first || !(i->second == j->second)) return false;
    return true;
  }

  std::string to_string(const std::vector<std::string>& labels) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.to_string() + ")*" + labels[k.second] + offset_to_string(k.first);
    }
    return out;
  }

 private:
  std::map<Key, Poly> terms_;
};

/// (t^m d_dir) . v
template <ExactField F>
ModuleVector<F> act(const PolyWeightModule<F>& M, int dir, const Offset& m, const ModuleVector<F>& v) {
  ModuleVector<F> out;
  for (const auto& [key, c] : v.terms()) {
    const auto& [o, f] = key;
    if (!M.component_exists(f, o)) continue;
    const auto mat = M.concrete_matrix(dir, m, o);
    const Offset target = offset_add(o, m);
    for (int r = 0; r < M.dim(); ++r)
      if (!mat(r, f).is_zero()) out.add(target, r, mat(r, f) * c);
  }
  return out;
}

/// Action of a W_1 element (lattice Z) on a rank-one module.
template <ExactField F>
ModuleVector<F> act(const PolyWeightModule<F>& M, const LieElement<Rank1Algebra<Rational>>& x,
                    const ModuleVector<F>& v) {
  if (M.n() != 1) throw ContextMismatch("W_1 element acting on a W_" + std::to_string(M.n()) + "-module");
  ModuleVector<F> out;
  for (const auto& [idx, c] : x.terms()) {
    if (idx.size() != 1) throw ContextMismatch("element is not in W_1");
    out += act(M, 0, Offset{static_cast<long>(idx(0))}, v).scaled(Polynomial<F>(F(c)));
  }
  return out;
}

template <ExactField F>
ModuleVector<F> act(const PolyWeightModule<F>& M, const LieElement<WnAlgebra<Rational>>& x,
                    const ModuleVector<F>& v) {
  if (x.algebra() && x.algebra()->n() != M.n()) throw ContextMismatch("algebra rank does not match module");
  ModuleVector<F> out;
  for (const auto& [idx, c] : x.terms()) {
    Offset m(idx.r.data(), idx.r.data() + idx.r.size());
    out += act(M, idx.dir, m, v).scaled(Polynomial<F>(F(c)));
  }
  return out;
}

}  // namespace wittforge
