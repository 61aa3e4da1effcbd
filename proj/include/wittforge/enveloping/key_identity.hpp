#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wittforge/enveloping/uea.hpp"

namespace wittforge {

/// Outcome of one LHS - RHS check of the quadratic differentiator identity.
struct IdentityRecord {
  std::string mode;  // "symbolic", "grid", "intro", "solenoidal"
  int m = 0;
  int r = 0;
  std::optional<std::array<long, 4>> tuple;  // (k, s, p, q) in grid mode
  std::optional<std::vector<long>> h;        // solenoidal step
  std::size_t lhs_terms = 0;
  std::size_t rhs_terms = 0;
  std::size_t residue_term_count = 0;
  std::string residue;  // text of the nonzero residue, empty on pass
  bool pass() const { return residue_term_count == 0; }
};

/// Sum over i <= m, j <= r of (-1)^{i+j} C(m,i) C(r,j) times
/// {Om^{(m,h)}_{k-ih,s-jh}, Om^{(r,h)}_{q+ih,p+jh}} - {Om^{(m,h)}_{k-ih,q-jh}, Om^{(r,h)}_{s+ih,p+jh}},
/// in normal form.
template <class S>
UEAElement<S> key_identity_lhs(const std::shared_ptr<const Rank1Algebra<S>>& alg, int m, int r,
                               const LatticePoint& k, const LatticePoint& s, const LatticePoint& p,
                               const LatticePoint& q, const LatticePoint& h) {
  UEAElement<S> acc(alg);
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= r; ++j) {
      Rational c = binomial(m, i) * binomial(r, j);
      if ((i + j) % 2) c = -c;
      const std::int64_t ii = i, jj = j;
      const auto a1 = differentiator(alg, m, k - ii * h, s - jj * h, h);
      const auto b1 = differentiator(alg, r, q + ii * h, p + jj * h, h);
      const auto a2 = differentiator(alg, m, k - ii * h, q - jj * h, h);
      const auto b2 = differentiator(alg, r, s + ii * h, p + jj * h, h);
      UEAElement<S> term = multiply(a1, b1) + multiply(b1, a1);
      term -= multiply(a2, b2) + multiply(b2, a2);
      acc += S(c) * term;
    }
  return pbw_normal_form(acc);
}

/// phi(q-s) ( phi(p-k+2rh) Om^{(2m+2r-1,h)}_{k+p+2rh, s+q-2rh}
///          - phi(p-k+2mh) Om^{(2m+2r-1,h)}_{k+p+(2r-1)h, s+q-(2r-1)h} ), in normal form.
template <class S>
UEAElement<S> key_identity_rhs(const std::shared_ptr<const Rank1Algebra<S>>& alg, int m, int r,
                               const LatticePoint& k, const LatticePoint& s, const LatticePoint& p,
                               const LatticePoint& q, const LatticePoint& h) {
  const int order = 2 * m + 2 * r - 1;
  const std::int64_t r2 = 2 * r, m2 = 2 * m, r21 = 2 * r - 1;
  const S lead = alg->phi(q - s);
  UEAElement<S> out = alg->phi(p - k + r2 * h) * differentiator(alg, order, k + p + r2 * h, s + q - r2 * h, h);
  out -= alg->phi(p - k + m2 * h) * differentiator(alg, order, k + p + r21 * h, s + q - r21 * h, h);
  return pbw_normal_form(lead * out);
}

/// The m = r specialization: phi(q-s) phi(p-k+2mh) Om^{(4m,h)}_{k+p+2mh, s+q-2mh}.
template <class S>
UEAElement<S> intro_identity_rhs(const std::shared_ptr<const Rank1Algebra<S>>& alg, int m, const LatticePoint& k,
                                 const LatticePoint& s, const LatticePoint& p, const LatticePoint& q,
                                 const LatticePoint& h) {
  const std::int64_t m2 = 2 * m;
  const S c = alg->phi(q - s) * alg->phi(p - k + m2 * h);
  return pbw_normal_form(c * differentiator(alg, 4 * m, k + p + m2 * h, s + q - m2 * h, h));
}

/// Fully symbolic check over W_1 at a generic point (k, s, p, q free generators).
IdentityRecord verify_key_identity_symbolic(int m, int r);

/// Exhaustive concrete check over W_1 for k, s, p, q in [lo, hi]; one record per tuple.
/// With check_intro (m == r only) the intro form is compared as well.
std::vector<IdentityRecord> verify_key_identity_grid(int m, int r, long lo, long hi, bool check_intro = false);

/// Symbolic LHS against the m = r specialized right-hand side.
IdentityRecord verify_intro_identity(int m);

/// Solenoidal W_mu with symbolic mu in dimension n, formal k, s, p, q and a concrete step h in Z^n.
IdentityRecord verify_solenoidal_identity(int m, int r, const std::vector<long>& h);

}  // namespace wittforge
