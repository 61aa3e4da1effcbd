#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wittforge/lie/algebras.hpp"

namespace wittforge {

template <class S>
std::string scalar_text(const S& c) {
  if constexpr (requires { c.to_string(); })
    return c.to_string();
  else
    return std::to_string(c);
}

/// Finite linear combination of basis elements of a Lie algebra.
template <class Algebra>
class LieElement {
 public:
  using S = typename Algebra::Scalar;
  using Index = typename Algebra::Index;
  using Terms = std::map<Index, S, typename Algebra::IndexLess>;

  LieElement() = default;
  explicit LieElement(std::shared_ptr<const Algebra> alg) : alg_(std::move(alg)) {}

  static LieElement basis(std::shared_ptr<const Algebra> alg, const Index& x, S c = S(1)) {
    LieElement out(std::move(alg));
    if (!out.alg_->valid_index(x)) throw PreconditionError("index does not belong to the algebra");
    out.add_term(x, std::move(c));
    return out;
  }

  const std::shared_ptr<const Algebra>& algebra() const { return alg_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  S coefficient(const Index& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? S(0) : it->second;
  }

  void add_term(const Index& x, const S& c) {
    if (wittforge::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(x, c);
    if (!inserted) {
      it->second += c;
      if (wittforge::is_zero(it->second)) terms_.erase(it);
    }
  }

  LieElement& operator+=(const LieElement& o) {
    adopt(o);
    for (const auto& [x, c] : o.terms_) add_term(x, c);
    return *this;
  }
  LieElement& operator-=(const LieElement& o) {
    adopt(o);
    for (const auto& [x, c] : o.terms_) add_term(x, -c);
    return *this;
  }
  LieElement& operator*=(const S& c) {
    if (wittforge::is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= c;
      it = wittforge::is_zero(it->second) ? terms_.erase(it) : std::next(it);
    }
    return *this;
  }

  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(const S& c, LieElement a) { return a *= c; }
  LieElement operator-() const { return S(-1) * *this; }

  friend bool operator==(const LieElement& a, const LieElement& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    for (auto j = b.terms_.begin(); j != b.terms_.end(); ++i, ++j)
      if (!(i->first == j->first) || !(i->second == j->second)) return false;
    return true;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [x, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + scalar_text(c) + ")*" + alg_->index_to_string(x);
    }
    return out;
  }

  /// Adopts the algebra of o when this element has none; otherwise insists they agree.
  void adopt(const LieElement& o) {
    if (!o.alg_) return;
    if (!alg_) {
      alg_ = o.alg_;
      return;
    }
    if (alg_ != o.alg_ && !(*alg_ == *o.alg_)) throw ContextMismatch("elements of different Lie algebras");
  }

 private:
  std::shared_ptr<const Algebra> alg_;
  Terms terms_;
};

template <class Algebra>
LieElement<Algebra> bracket(const LieElement<Algebra>& x, const LieElement<Algebra>& y) {
  LieElement<Algebra> out(x.algebra());
  out.adopt(y);
  if (!out.algebra()) return out;
  const Algebra& alg = *out.algebra();
  for (const auto& [a, c] : x.terms())
    for (const auto& [b, d] : y.terms())
      for (const auto& [z, e] : alg.bracket_basis(a, b)) out.add_term(z, c * d * e);
  return out;
}

struct JacobiReport {
  int checked = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

/// [[x,y],z] + [[y,z],x] + [[z,x],y] == 0 on each sampled triple.
template <class Algebra>
JacobiReport jacobi_check(const std::vector<std::array<LieElement<Algebra>, 3>>& samples) {
  JacobiReport report;
  for (const auto& [x, y, z] : samples) {
    const auto j = bracket(bracket(x, y), z) + bracket(bracket(y, z), x) + bracket(bracket(z, x), y);
    ++report.checked;
    if (!j.is_zero())
      report.failures.push_back("x=" + x.to_string() + " y=" + y.to_string() + " z=" + z.to_string() +
                                " residue=" + j.to_string());
  }
  return report;
}

/// Embeds W_mu into W_n: t^r d_mu -> sum_a mu_a t^r d_a, where mu_a = phi(unit a).
template <class S>
LieElement<WnAlgebra<S>> solenoidal_embed(const LieElement<Rank1Algebra<S>>& x,
                                          std::shared_ptr<const WnAlgebra<S>> target) {
  LieElement<WnAlgebra<S>> out(target);
  if (!x.algebra()) return out;
  const auto& src = *x.algebra();
  if (src.lattice().rank() != target->n())
    throw PreconditionError("solenoidal_embed: lattice rank " + std::to_string(src.lattice().rank()) +
                            " does not match W_" + std::to_string(target->n()));
  for (const auto& [r, c] : x.terms())
    for (int a = 0; a < target->n(); ++a) out.add_term({r, a}, c * src.weights()[a]);
  return out;
}

}  // namespace wittforge
