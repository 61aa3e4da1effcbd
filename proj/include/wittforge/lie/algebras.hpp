#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wittforge/lie/lattice.hpp"
#include "wittforge/scalar/polynomial.hpp"

namespace wittforge {

using PolyQ = Polynomial<Rational>;

/// Rank-one family: basis e_x, x in an index lattice, with
/// [e_x, e_y] = phi(y - x) e_{x+y} for an additive weight functional phi.
/// Covers W_1 (lattice Z, phi = id) and solenoidal W_mu (lattice Z^n, phi = mu . -).
template <class S>
class Rank1Algebra {
 public:
  using Scalar = S;
  using Index = LatticePoint;
  using IndexLess = LatticeLess;

  Rank1Algebra(IndexLattice lattice, std::vector<S> weights, std::string name = "rank1")
      : lattice_(std::move(lattice)), weights_(std::move(weights)), name_(std::move(name)) {
    if (static_cast<int>(weights_.size()) != lattice_.rank())
      throw PreconditionError("one weight per lattice generator is required");
  }

  const IndexLattice& lattice() const { return lattice_; }
  const std::vector<S>& weights() const { return weights_; }
  const std::string& name() const { return name_; }

  S phi(const LatticePoint& x) const {
    S out(0);
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (x(i) != 0) out += S(x(i)) * weights_[i];
    return out;
  }

  /// Structure constants of [e_x, e_y] as (index, coefficient) pairs.
  std::vector<std::pair<Index, S>> bracket_basis(const Index& x, const Index& y) const {
    S c = phi(y - x);
    if (is_zero(c)) return {};
    return {{x + y, std::move(c)}};
  }

  bool valid_index(const Index& x) const { return lattice_.contains(x); }

  std::string index_to_string(const Index& x) const { return "e[" + coords_to_string(x) + "]"; }

  friend bool operator==(const Rank1Algebra& a, const Rank1Algebra& b) {
    return a.lattice_ == b.lattice_ && a.weights_ == b.weights_;
  }

 private:
  IndexLattice lattice_;
  std::vector<S> weights_;
  std::string name_;
};

/// Basis index of W_n: t^r d_dir, dir in 0..n-1.
struct WnIndex {
  LatticePoint r;
  int dir = 0;
};

struct WnIndexLess {
  bool operator()(const WnIndex& a, const WnIndex& b) const {
    const int c = lattice_compare(a.r, b.r);
    if (c != 0) return c < 0;
    return a.dir < b.dir;
  }
};

inline bool operator==(const WnIndex& a, const WnIndex& b) { return a.dir == b.dir && lattice_equal(a.r, b.r); }

/// Vector fields on the n-torus:
/// [t^r d_a, t^s d_b] = s_a t^{r+s} d_b - r_b t^{r+s} d_a.
template <class S>
class WnAlgebra {
 public:
  using Scalar = S;
  using Index = WnIndex;
  using IndexLess = WnIndexLess;

  explicit WnAlgebra(int n) : n_(n) {
    if (n < 1 || n > 8) throw PreconditionError("W_n requires 1 <= n <= 8");
  }

  int n() const { return n_; }

  std::vector<std::pair<Index, S>> bracket_basis(const Index& x, const Index& y) const {
    std::vector<std::pair<Index, S>> out;
    const LatticePoint sum = x.r + y.r;
    const std::int64_t sa = y.r(x.dir);
    const std::int64_t rb = x.r(y.dir);
    if (x.dir == y.dir) {
      if (sa - rb != 0) out.push_back({{sum, x.dir}, S(sa - rb)});
      return out;
    }
    if (sa != 0) out.push_back({{sum, y.dir}, S(sa)});
    if (rb != 0) out.push_back({{sum, x.dir}, S(-rb)});
    return out;
  }

  bool valid_index(const Index& x) const { return x.r.size() == n_ && x.dir >= 0 && x.dir < n_; }

  std::string index_to_string(const Index& x) const {
    return "t[" + coords_to_string(x.r) + "]d" + std::to_string(x.dir + 1);
  }

  WnIndex basis(const LatticePoint& r, int dir) const { return {r, dir}; }

  friend bool operator==(const WnAlgebra& a, const WnAlgebra& b) { return a.n_ == b.n_; }

 private:
  int n_;
};

/// W_1 over the rationals: lattice Z, phi = identity.
inline std::shared_ptr<const Rank1Algebra<Rational>> witt_algebra() {
  return std::make_shared<const Rank1Algebra<Rational>>(IndexLattice({"1"}), std::vector<Rational>{Rational(1)},
                                                        "W1");
}

/// W_1 at a generic point: lattice Z^{1+|symbols|} with a constant axis "1"
/// and one formal generator per symbol, phi sending each generator to the
/// same-named polynomial variable. Identities in this algebra specialize to
/// every integer assignment of the symbols.
inline std::shared_ptr<const Rank1Algebra<PolyQ>> symbolic_witt_algebra(const std::vector<std::string>& symbols) {
  const SymbolContext ctx = make_symbols(symbols);
  std::vector<std::string> names{"1"};
  std::vector<PolyQ> weights{PolyQ(ctx, Rational(1))};
  for (const auto& s : symbols) {
    names.push_back(s);
    weights.push_back(PolyQ::variable(ctx, s));
  }
  return std::make_shared<const Rank1Algebra<PolyQ>>(IndexLattice(std::move(names)), std::move(weights),
                                                     "W1-symbolic");
}

/// Solenoidal W_mu with symbolic direction mu = (mu1..mun): lattice Z^n with
/// concrete axes d1..dn (phi(d_a) = mu_a), plus optional formal generators.
inline std::shared_ptr<const Rank1Algebra<PolyQ>> solenoidal_algebra(int n,
                                                                     const std::vector<std::string>& symbols = {}) {
  std::vector<std::string> sym;
  std::vector<std::string> names;
  for (int a = 1; a <= n; ++a) {
    sym.push_back("mu" + std::to_string(a));
    names.push_back("d" + std::to_string(a));
  }
  for (const auto& s : symbols) {
    sym.push_back(s);
    names.push_back(s);
  }
  const SymbolContext ctx = make_symbols(sym);
  std::vector<PolyQ> weights;
  for (const auto& s : sym) weights.push_back(PolyQ::variable(ctx, s));
  return std::make_shared<const Rank1Algebra<PolyQ>>(IndexLattice(std::move(names)), std::move(weights), "Wmu");
}

}  // namespace wittforge
