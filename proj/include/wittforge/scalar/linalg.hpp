#pragma once

#include <optional>
#include <vector>

#include "wittforge/scalar/scalar_traits.hpp"

namespace wittforge {

template <ExactField F>
struct RowEchelon {
  MatrixX<F> reduced;       ///< reduced row-echelon form, pivots scaled to 1
  std::vector<int> pivots;  ///< pivot column of each non-zero row, increasing
  MatrixX<F> transform;     ///< transform * input == reduced (when tracked)

  int rank() const { return static_cast<int>(pivots.size()); }
};

/// Gauss-Jordan elimination over an exact field; pivots are the first
/// non-zero entries, so the result is the unique reduced echelon form.
template <ExactField F>
RowEchelon<F> row_reduce(MatrixX<F> a, bool track_transform = false) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  MatrixX<F> t = track_transform ? identity_matrix<F>(rows) : MatrixX<F>();
  std::vector<int> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && is_zero(a(p, c))) ++p;
    if (p == rows) continue;
    if (p != r) {
      a.row(p).swap(a.row(r));
      if (track_transform) t.row(p).swap(t.row(r));
    }
    const F inv = F(1) / a(r, c);
    for (Eigen::Index j = 0; j < cols; ++j)
      if (!is_zero(a(r, j))) a(r, j) *= inv;
    if (track_transform)
      for (Eigen::Index j = 0; j < rows; ++j)
        if (!is_zero(t(r, j))) t(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      const F f = a(i, c);
      for (Eigen::Index j = c; j < cols; ++j)
        if (!is_zero(a(r, j))) a(i, j) -= f * a(r, j);
      if (track_transform)
        for (Eigen::Index j = 0; j < rows; ++j)
          if (!is_zero(t(r, j))) t(i, j) -= f * t(r, j);
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return {std::move(a), std::move(pivots), std::move(t)};
}

template <ExactField F>
int rank(const MatrixX<F>& a) {
  return row_reduce<F>(a).rank();
}

/// Some x with a * x == b, or nullopt when the system is inconsistent.
template <ExactField F>
std::optional<VectorX<F>> solve(const MatrixX<F>& a, const VectorX<F>& b) {
  MatrixX<F> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  const auto ech = row_reduce<F>(std::move(aug));
  VectorX<F> x = zero_vector<F>(a.cols());
  for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
    const int c = ech.pivots[i];
    if (c == a.cols()) return std::nullopt;
    x(c) = ech.reduced(static_cast<Eigen::Index>(i), a.cols());
  }
  return x;
}

/// Columns form a basis of {x : a x = 0}.
template <ExactField F>
MatrixX<F> nullspace(const MatrixX<F>& a) {
  const auto ech = row_reduce<F>(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : ech.pivots) is_pivot[c] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  MatrixX<F> out = zero_matrix<F>(a.cols(), static_cast<Eigen::Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    out(free[k], static_cast<Eigen::Index>(k)) = F(1);
    for (std::size_t i = 0; i < ech.pivots.size(); ++i)
      out(ech.pivots[i], static_cast<Eigen::Index>(k)) = -ech.reduced(static_cast<Eigen::Index>(i), free[k]);
  }
  return out;
}

template <ExactField F>
std::optional<MatrixX<F>> inverse(const MatrixX<F>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const auto ech = row_reduce<F>(a, true);
  if (ech.rank() != a.rows()) return std::nullopt;
  return ech.transform;
}

}  // namespace wittforge
