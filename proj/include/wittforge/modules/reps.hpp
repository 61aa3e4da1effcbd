#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wittforge/scalar/linalg.hpp"

namespace wittforge {

/// Finite-dimensional gl_n-module given by the matrices of the units E_{pa}.
template <ExactField F>
class GLnRepData {
 public:
  using Matrix = MatrixX<F>;

  GLnRepData(int n, int dim, std::map<std::pair<int, int>, Matrix> units, std::vector<std::string> labels = {})
      : n_(n), dim_(dim), labels_(std::move(labels)) {
    if (n < 1 || dim < 1) throw PreconditionError("gl_n representation needs n >= 1 and dim >= 1");
    if (labels_.empty())
      for (int i = 0; i < dim; ++i) labels_.push_back("u" + std::to_string(i + 1));
    if (static_cast<int>(labels_.size()) != dim) throw PreconditionError("one label per basis vector");
    units_.assign(n * n, zero_matrix<F>(dim, dim));
    for (auto& [pa, m] : units) {
      const auto [p, a] = pa;
      if (p < 0 || p >= n || a < 0 || a >= n) throw PreconditionError("E_{pa} index out of range");
      if (m.rows() != dim || m.cols() != dim) throw PreconditionError("E_{pa} matrix has wrong shape");
      units_[p * n + a] = m;
    }
    if (auto failure = relation_failure()) throw PreconditionError("not a gl_n representation: " + *failure);
  }

  static GLnRepData trivial(int n, int dim = 1) { return GLnRepData(n, dim, {}); }

  /// E_{pa} e_b = delta_{ab} e_p.
  static GLnRepData natural(int n) {
    std::map<std::pair<int, int>, Matrix> units;
    std::vector<std::string> labels;
    for (int p = 0; p < n; ++p) {
      labels.push_back("e" + std::to_string(p + 1));
      for (int a = 0; a < n; ++a) {
        Matrix m = zero_matrix<F>(n, n);
        m(p, a) = F(1);
        units[{p, a}] = m;
      }
    }
    return GLnRepData(n, n, std::move(units), std::move(labels));
  }

  /// Lambda^k of the natural module: lexicographic wedge basis, E_{pa} acting as a derivation.
  static GLnRepData exterior_power(int n, int k) {
    const auto basis = wedge_basis(n, k);
    const int dim = static_cast<int>(basis.size());
    std::map<std::vector<int>, int> index;
    std::vector<std::string> labels;
    for (int i = 0; i < dim; ++i) {
      index[basis[i]] = i;
      labels.push_back(wedge_label(basis[i]));
    }
    std::map<std::pair<int, int>, Matrix> units;
    for (int p = 0; p < n; ++p)
      for (int a = 0; a < n; ++a) {
        Matrix m = zero_matrix<F>(dim, dim);
        for (int col = 0; col < dim; ++col) {
          const auto& I = basis[col];
          for (std::size_t j = 0; j < I.size(); ++j) {
            if (I[j] != a) continue;
            std::vector<int> J = I;
            J[j] = p;
            const auto [sorted, sign] = sort_with_sign(J);
            if (sign == 0) continue;
            m(index.at(sorted), col) += F(sign);
          }
        }
        units[{p, a}] = m;
      }
    return GLnRepData(n, dim, std::move(units), std::move(labels));
  }

  int n() const { return n_; }
  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Matrix& E(int p, int a) const { return units_[p * n_ + a]; }

  /// First violated relation [E_pq, E_rs] = delta_qr E_ps - delta_sp E_rq, if any.
  std::optional<std::string> relation_failure() const {
    for (int p = 0; p < n_; ++p)
      for (int q = 0; q < n_; ++q)
        for (int r = 0; r < n_; ++r)
          for (int s = 0; s < n_; ++s) {
            Matrix lhs = multiply<F>(E(p, q), E(r, s)) - multiply<F>(E(r, s), E(p, q));
            Matrix rhs = zero_matrix<F>(dim_, dim_);
            if (q == r) rhs += E(p, s);
            if (s == p) rhs -= E(r, q);
            if (!(lhs == rhs))
              return "[E" + std::to_string(p + 1) + std::to_string(q + 1) + ", E" + std::to_string(r + 1) +
                     std::to_string(s + 1) + "]";
          }
    return std::nullopt;
  }

  /// Increasing k-subsets of {0..n-1} in lexicographic order.
  static std::vector<std::vector<int>> wedge_basis(int n, int k) {
    if (k < 0 || k > n) throw PreconditionError("wedge degree out of range");
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
      if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
      }
      for (int i = start; i < n; ++i) {
        cur.push_back(i);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    return out;
  }

  static std::string wedge_label(const std::vector<int>& I) {
    if (I.empty()) return "1";
    std::string out;
    for (std::size_t j = 0; j < I.size(); ++j) out += (j ? "^e" : "e") + std::to_string(I[j] + 1);
    return out;
  }

  /// Sorted copy and the sign of the sorting permutation (0 on a repeated index).
  static std::pair<std::vector<int>, int> sort_with_sign(std::vector<int> v) {
    int sign = 1;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j + 1 < v.size() - i; ++j) {
        if (v[j] == v[j + 1]) return {v, 0};
        if (v[j] > v[j + 1]) {
          std::swap(v[j], v[j + 1]);
          sign = -sign;
        }
      }
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      if (v[i] == v[i + 1]) return {v, 0};
    return {v, sign};
  }

 private:
  int n_;
  int dim_;
  std::vector<std::string> labels_;
  std::vector<Matrix> units_;
};

using MultiIndex = std::vector<int>;

inline int multi_degree(const MultiIndex& k) {
  int d = 0;
  for (int x : k) d += x;
  return d;
}

/// All k in Z_{>=0}^n with 1 <= |k| <= N, graded then lexicographic.
inline std::vector<MultiIndex> multi_indices(int n, int N) {
  std::vector<MultiIndex> out;
  for (int d = 1; d <= N; ++d) {
    MultiIndex cur(n, 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
      if (pos == n - 1) {
        cur[pos] = left;
        out.push_back(cur);
        return;
      }
      for (int v = left; v >= 0; --v) {
        cur[pos] = v;
        self(self, pos + 1, left - v);
      }
    };
    rec(rec, 0, d);
  }
  return out;
}

/// Finite-dimensional representation of the Lie algebra of vector fields
/// t^k d_j (|k| >= 1) vanishing beyond degree N.
template <ExactField F>
class JPlusRepData {
 public:
  using Matrix = MatrixX<F>;
  using Key = std::pair<MultiIndex, int>;

  JPlusRepData(int n, int dim, int cutoff, std::map<Key, Matrix> rho) : n_(n), dim_(dim), cutoff_(cutoff) {
    if (n < 1 || dim < 1 || cutoff < 1) throw PreconditionError("jet representation needs n, dim, cutoff >= 1");
    for (auto& [key, m] : rho) {
      const auto& [k, j] = key;
      if (static_cast<int>(k.size()) != n || j < 0 || j >= n) throw PreconditionError("rho index out of range");
      for (int x : k)
        if (x < 0) throw PreconditionError("rho multi-index must be nonnegative");
      const int d = multi_degree(k);
      if (d < 1 || d > cutoff) throw PreconditionError("rho degree must lie in 1..cutoff");
      if (m.rows() != dim || m.cols() != dim) throw PreconditionError("rho matrix has wrong shape");
      if (!is_zero_matrix<F>(m)) rho_[key] = m;
    }
    if (auto failure = relation_failure()) throw PreconditionError("rho violates the bracket " + *failure);
  }

  /// rho(t^{e_p} d_a) = E_{pa} of U, all higher blocks zero.
  static JPlusRepData from_gl(const GLnRepData<F>& U, int cutoff = 1) {
    std::map<Key, Matrix> rho;
    for (int p = 0; p < U.n(); ++p)
      for (int a = 0; a < U.n(); ++a) {
        MultiIndex k(U.n(), 0);
        k[p] = 1;
        rho[{k, a}] = U.E(p, a);
      }
    return JPlusRepData(U.n(), U.dim(), cutoff, std::move(rho));
  }

  int n() const { return n_; }
  int dim() const { return dim_; }
  int cutoff() const { return cutoff_; }
  const std::map<Key, Matrix>& blocks() const { return rho_; }

  Matrix rho(const MultiIndex& k, int j) const {
    auto it = rho_.find({k, j});
    return it == rho_.end() ? zero_matrix<F>(dim_, dim_) : it->second;
  }

  /// [t^k d_i, t^l d_j] = l_i t^{k+l-e_i} d_j - k_j t^{k+l-e_j} d_i, with rho = 0 beyond the cutoff.
  std::optional<std::string> relation_failure() const {
    const auto idx = multi_indices(n_, cutoff_);
    for (const auto& k : idx)
      for (int i = 0; i < n_; ++i)
        for (const auto& l : idx)
          for (int j = 0; j < n_; ++j) {
            const Matrix a = rho(k, i), b = rho(l, j);
            Matrix lhs = multiply<F>(a, b) - multiply<F>(b, a);
            Matrix rhs = zero_matrix<F>(dim_, dim_);
            if (l[i] > 0) rhs += F(l[i]) * shifted(k, l, i, j);
            if (k[j] > 0) rhs -= F(k[j]) * shifted(k, l, j, i);
            if (!(lhs == rhs))
              return "[" + field_text(k, i) + ", " + field_text(l, j) + "]";
          }
    return std::nullopt;
  }

  static std::string field_text(const MultiIndex& k, int j) {
    std::string out = "t^(";
    for (std::size_t i = 0; i < k.size(); ++i) out += (i ? "," : "") + std::to_string(k[i]);
    return out + ")d" + std::to_string(j + 1);
  }

 private:
  /// rho(t^{k+l-e_drop} d_dir), zero beyond the cutoff.
  Matrix shifted(const MultiIndex& k, const MultiIndex& l, int drop, int dir) const {
    MultiIndex s(n_);
    for (int t = 0; t < n_; ++t) s[t] = k[t] + l[t];
    --s[drop];
    if (multi_degree(s) > cutoff_) return zero_matrix<F>(dim_, dim_);
    return rho(s, dir);
  }

  int n_;
  int dim_;
  int cutoff_;
  std::map<Key, Matrix> rho_;
};

}  // namespace wittforge
