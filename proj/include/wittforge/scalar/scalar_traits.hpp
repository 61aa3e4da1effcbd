#pragma once

#include <Eigen/Core>

#include <concepts>
#include <string>
#include <string_view>
#include <type_traits>

#include "wittforge/error.hpp"
#include "wittforge/scalar/quad_ext.hpp"
#include "wittforge/scalar/rational.hpp"

namespace wittforge {

template <class T>
concept ExactField = std::same_as<T, Rational> || std::same_as<T, QuadExt>;

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const QuadExt& x) { return x.is_zero(); }

/// Text helpers used when a field element is printed as a polynomial coefficient.
template <ExactField F>
struct CoefficientText;

template <>
struct CoefficientText<Rational> {
  static bool negative(const Rational& c) { return c.sign() < 0; }
  static bool unit(const Rational& c) { return c.is_one(); }
  static std::string magnitude(const Rational& c) { return (c.sign() < 0 ? -c : c).to_string(); }
  static Rational parse(std::string_view s) {
    if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    return Rational::parse(s);
  }
};

template <>
struct CoefficientText<QuadExt> {
  static bool negative(const QuadExt& c) { return c.is_rational() && c.rational_part().sign() < 0; }
  static bool unit(const QuadExt& c) { return c.is_rational() && c.rational_part().is_one(); }
  static std::string magnitude(const QuadExt& c) {
    if (c.is_rational()) return CoefficientText<Rational>::magnitude(c.rational_part());
    return "(" + c.to_string() + ")";
  }
  static QuadExt parse(std::string_view s) {
    if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    return QuadExt::parse(s);
  }
};

template <class M>
using MatrixX = Eigen::Matrix<M, Eigen::Dynamic, Eigen::Dynamic>;
template <class M>
using VectorX = Eigen::Matrix<M, Eigen::Dynamic, 1>;

template <class M>
bool is_zero_matrix(const MatrixX<M>& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!is_zero(a(i, j))) return false;
  return true;
}

template <class M>
bool is_zero_vector(const VectorX<M>& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!is_zero(a(i))) return false;
  return true;
}

template <class M>
MatrixX<M> zero_matrix(Eigen::Index rows, Eigen::Index cols) {
  return MatrixX<M>::Constant(rows, cols, M(0));
}

template <class M>
VectorX<M> zero_vector(Eigen::Index n) {
  return VectorX<M>::Constant(n, M(0));
}

template <class M>
MatrixX<M> identity_matrix(Eigen::Index n) {
  MatrixX<M> out = zero_matrix<M>(n, n);
  for (Eigen::Index i = 0; i < n; ++i) out(i, i) = M(1);
  return out;
}

/// Exact products; Eigen's blocked kernels assume trivially copyable scalars.
template <class M>
MatrixX<M> multiply(const MatrixX<M>& a, const MatrixX<M>& b) {
  if (a.cols() != b.rows()) throw PreconditionError("matrix shape mismatch");
  MatrixX<M> out = zero_matrix<M>(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        if (!is_zero(b(k, j))) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <class M>
VectorX<M> multiply(const MatrixX<M>& a, const VectorX<M>& v) {
  if (a.cols() != v.size()) throw PreconditionError("matrix shape mismatch");
  VectorX<M> out = zero_vector<M>(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      if (!is_zero(a(i, k)) && !is_zero(v(k))) out(i) += a(i, k) * v(k);
  return out;
}

}  // namespace wittforge

namespace Eigen {

template <>
struct NumTraits<wittforge::Rational> : GenericNumTraits<wittforge::Rational> {
  using Real = wittforge::Rational;
  using NonInteger = wittforge::Rational;
  using Nested = wittforge::Rational;
  using Literal = wittforge::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
  static int digits10() { return 0; }
  static int max_digits10() { return 0; }
};

template <>
struct NumTraits<wittforge::QuadExt> : GenericNumTraits<wittforge::QuadExt> {
  using Real = wittforge::QuadExt;
  using NonInteger = wittforge::QuadExt;
  using Nested = wittforge::QuadExt;
  using Literal = wittforge::QuadExt;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 96
  };
  static int digits10() { return 0; }
  static int max_digits10() { return 0; }
};

}  // namespace Eigen
