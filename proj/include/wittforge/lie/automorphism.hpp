#pragma once

#include <cstdint>
#include <string>

#include "wittforge/lie/lie_element.hpp"
#include "wittforge/scalar/linalg.hpp"

namespace wittforge {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Element g of GL_n(Z), acting on the torus by t^r -> t^{g r}.
class LatticeAutomorphism {
 public:
  explicit LatticeAutomorphism(IntMatrix g) : g_(std::move(g)) {
    if (g_.rows() != g_.cols() || g_.rows() < 1) throw PreconditionError("automorphism matrix must be square");
    MatrixX<Rational> q(g_.rows(), g_.cols());
    for (Eigen::Index i = 0; i < g_.rows(); ++i)
      for (Eigen::Index j = 0; j < g_.cols(); ++j) q(i, j) = Rational(g_(i, j));
    auto inv = wittforge::inverse<Rational>(q);
    if (!inv) throw PreconditionError("matrix is singular, not in GL_n(Z)");
    inv_ = IntMatrix(g_.rows(), g_.cols());
    for (Eigen::Index i = 0; i < g_.rows(); ++i)
      for (Eigen::Index j = 0; j < g_.cols(); ++j) {
        const Rational& v = (*inv)(i, j);
        if (!v.is_integer()) throw PreconditionError("matrix is not unimodular (det != +-1)");
        inv_(i, j) = v.to_long();
      }
  }

  static LatticeAutomorphism identity(int n) { return LatticeAutomorphism(IntMatrix::Identity(n, n)); }

  int n() const { return static_cast<int>(g_.rows()); }
  const IntMatrix& matrix() const { return g_; }
  const IntMatrix& inverse_matrix() const { return inv_; }
  LatticeAutomorphism inverse() const { return LatticeAutomorphism(inv_); }

  LatticePoint apply(const LatticePoint& r) const {
    LatticePoint out = LatticePoint::Zero(r.size());
    for (Eigen::Index i = 0; i < g_.rows(); ++i)
      for (Eigen::Index j = 0; j < g_.cols(); ++j) out(i) += g_(i, j) * r(j);
    return out;
  }

  friend LatticeAutomorphism operator*(const LatticeAutomorphism& a, const LatticeAutomorphism& b) {
    return LatticeAutomorphism(a.g_ * b.g_);
  }

  std::string to_string() const {
    std::string out = "[";
    for (Eigen::Index i = 0; i < g_.rows(); ++i) {
      if (i) out += ";";
      for (Eigen::Index j = 0; j < g_.cols(); ++j) out += (j ? "," : "") + std::to_string(g_(i, j));
    }
    return out + "]";
  }

 private:
  IntMatrix g_;
  IntMatrix inv_;
};

/// Pushforward of vector fields: t^r d_a -> sum_b (g^-1)_{ab} t^{g r} d_b.
/// apply_automorphism(g, apply_automorphism(h, x)) == apply_automorphism(g h, x).
template <class S>
LieElement<WnAlgebra<S>> apply_automorphism(const LatticeAutomorphism& g, const LieElement<WnAlgebra<S>>& x) {
  LieElement<WnAlgebra<S>> out(x.algebra());
  if (!x.algebra()) return out;
  if (g.n() != x.algebra()->n()) throw PreconditionError("automorphism rank does not match W_n");
  const IntMatrix& inv = g.inverse_matrix();
  for (const auto& [idx, c] : x.terms()) {
    const LatticePoint gr = g.apply(idx.r);
    for (int b = 0; b < g.n(); ++b)
      if (inv(idx.dir, b) != 0) out.add_term({gr, b}, c * S(inv(idx.dir, b)));
  }
  return out;
}

}  // namespace wittforge
