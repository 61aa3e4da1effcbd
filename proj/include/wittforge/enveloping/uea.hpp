#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wittforge/lie/lie_element.hpp"

namespace wittforge {

/// Word e_{x1} e_{x2} ... e_{xd} in the enveloping algebra.
using UEAMonomial = std::vector<LatticePoint>;

/// Degree first, then factorwise lattice order.
struct MonomialLess {
  bool operator()(const UEAMonomial& a, const UEAMonomial& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      const int c = lattice_compare(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }
};

inline bool is_pbw_ordered(const UEAMonomial& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (lattice_compare(w[i], w[i + 1]) > 0) return false;
  return true;
}

enum class ReductionStrategy { LeftmostDescent, RightmostDescent };

/// Element of U(L) for a rank-one algebra L, as a sparse sum of words.
template <class S>
class UEAElement {
 public:
  using Algebra = Rank1Algebra<S>;
  using Terms = std::map<UEAMonomial, S, MonomialLess>;

  UEAElement() = default;
  explicit UEAElement(std::shared_ptr<const Algebra> alg) : alg_(std::move(alg)) {}

  static UEAElement generator(std::shared_ptr<const Algebra> alg, const LatticePoint& x, S c = S(1)) {
    if (!alg->valid_index(x)) throw PreconditionError("index does not belong to the algebra");
    UEAElement out(std::move(alg));
    out.add_term({x}, std::move(c));
    return out;
  }
  static UEAElement word(std::shared_ptr<const Algebra> alg, UEAMonomial w, S c = S(1)) {
    UEAElement out(std::move(alg));
    out.add_term(std::move(w), std::move(c));
    return out;
  }

  const std::shared_ptr<const Algebra>& algebra() const { return alg_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_normal() const {
    for (const auto& [w, c] : terms_)
      if (!is_pbw_ordered(w)) return false;
    return true;
  }
  S coefficient(const UEAMonomial& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? S(0) : it->second;
  }

  void add_term(const UEAMonomial& w, const S& c) {
    if (wittforge::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (wittforge::is_zero(it->second)) terms_.erase(it);
    }
  }

  void adopt(const UEAElement& o) {
    if (!o.alg_) return;
    if (!alg_) {
      alg_ = o.alg_;
      return;
    }
    if (alg_ != o.alg_ && !(*alg_ == *o.alg_)) throw ContextMismatch("elements of different enveloping algebras");
  }

  UEAElement& operator+=(const UEAElement& o) {
    adopt(o);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  UEAElement& operator-=(const UEAElement& o) {
    adopt(o);
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  UEAElement& operator*=(const S& c) {
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
  friend UEAElement operator+(UEAElement a, const UEAElement& b) { return a += b; }
  friend UEAElement operator-(UEAElement a, const UEAElement& b) { return a -= b; }
  friend UEAElement operator*(const S& c, UEAElement a) { return a *= c; }

  friend bool operator==(const UEAElement& a, const UEAElement& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    for (auto j = b.terms_.begin(); j != b.terms_.end(); ++i, ++j) {
      if (i->first.size() != j->first.size() || !(i->second == j->second)) return false;
      for (std::size_t t = 0; t < i->first.size(); ++t)
        if (!lattice_equal(i->first[t], j->first[t])) return false;
    }
    return true;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      out += "(" + scalar_text(it->second) + ")";
      if (it->first.empty()) continue;
      out += "*";
      for (const auto& x : it->first) out += "e[" + coords_to_string(x) + "]";
    }
    return out;
  }

 private:
  std::shared_ptr<const Algebra> alg_;
  Terms terms_;
};

/// Free product: concatenation of words, no reduction.
template <class S>
UEAElement<S> multiply(const UEAElement<S>& x, const UEAElement<S>& y) {
  UEAElement<S> out(x.algebra());
  out.adopt(y);
  for (const auto& [a, c] : x.terms())
    for (const auto& [b, d] : y.terms()) {
      UEAMonomial w = a;
      w.insert(w.end(), b.begin(), b.end());
      out.add_term(w, c * d);
    }
  return out;
}

namespace detail {

inline int inversion_count(const UEAMonomial& w) {
  int n = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (lattice_compare(w[i], w[j]) > 0) ++n;
  return n;
}

/// Work order: longer words first, then more inversions. Each rewrite step
/// lowers one of the two, so a word is popped only after every contribution
/// to it has been merged.
struct WorkKey {
  std::size_t degree;
  int inversions;
  UEAMonomial word;
};

struct WorkKeyLess {
  bool operator()(const WorkKey& a, const WorkKey& b) const {
    if (a.degree != b.degree) return a.degree > b.degree;
    if (a.inversions != b.inversions) return a.inversions > b.inversions;
    return MonomialLess{}(a.word, b.word);
  }
};

}  // namespace detail

/// Rewrites with e_y e_x -> e_x e_y + phi(x - y) e_{x+y} for y > x until every
/// word is nondecreasing.
template <class S>
UEAElement<S> pbw_normal_form(const UEAElement<S>& x,
                              ReductionStrategy strategy = ReductionStrategy::LeftmostDescent) {
  UEAElement<S> out(x.algebra());
  if (!x.algebra()) {
    for (const auto& [w, c] : x.terms()) out.add_term(w, c);
    return out;
  }
  const auto& alg = *x.algebra();
  std::map<detail::WorkKey, S, detail::WorkKeyLess> work;
  auto push = [&work](UEAMonomial w, const S& c) {
    if (is_zero(c)) return;
    const int inv = detail::inversion_count(w);
    const std::size_t deg = w.size();
    auto [it, inserted] = work.try_emplace(detail::WorkKey{deg, inv, std::move(w)}, c);
    if (!inserted) {
      it->second += c;
      if (is_zero(it->second)) work.erase(it);
    }
  };
  for (const auto& [w, c] : x.terms()) push(w, c);

  while (!work.empty()) {
    auto node = work.extract(work.begin());
    UEAMonomial w = std::move(node.key().word);
    const S c = std::move(node.mapped());
    if (node.key().inversions == 0) {
      out.add_term(w, c);
      continue;
    }
    std::size_t i = 0;
    if (strategy == ReductionStrategy::LeftmostDescent) {
      while (lattice_compare(w[i], w[i + 1]) <= 0) ++i;
    } else {
      i = w.size() - 2;
      while (lattice_compare(w[i], w[i + 1]) <= 0) --i;
    }
    const LatticePoint y = w[i];
    const LatticePoint xx = w[i + 1];
    S contraction = c * alg.phi(xx - y);
    UEAMonomial shorter;
    shorter.reserve(w.size() - 1);
    for (std::size_t t = 0; t < w.size(); ++t) {
      if (t == i) {
        shorter.push_back(y + xx);
        ++t;
      } else {
        shorter.push_back(w[t]);
      }
    }
    std::swap(w[i], w[i + 1]);
    push(std::move(w), c);
    push(std::move(shorter), contraction);
  }
  return out;
}

/// {x, y} = xy + yx, in normal form.
template <class S>
UEAElement<S> anticommutator(const UEAElement<S>& x, const UEAElement<S>& y) {
  return pbw_normal_form(multiply(x, y) + multiply(y, x));
}

/// Omega^{(m,h)}_{k,s} = sum_i (-1)^i C(m,i) e_{k - i h} e_{s + i h}.
template <class S>
UEAElement<S> differentiator(const std::shared_ptr<const Rank1Algebra<S>>& alg, int m, const LatticePoint& k,
                             const LatticePoint& s, const LatticePoint& h) {
  if (m < 0) throw PreconditionError("differentiator order must be nonnegative");
  UEAElement<S> out(alg);
  for (int i = 0; i <= m; ++i) {
    Rational c = binomial(m, i);
    if (i % 2) c = -c;
    const std::int64_t ii = i;
    out.add_term({k - ii * h, s + ii * h}, S(c));
  }
  return out;
}

}  // namespace wittforge
