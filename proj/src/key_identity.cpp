#include "wittforge/enveloping/key_identity.hpp"

namespace wittforge {

namespace {

void require_orders(int m, int r) {
  if (m < 2 || r < 2)
    throw PreconditionError("the key identity requires m, r >= 2 (got m=" + std::to_string(m) +
                            ", r=" + std::to_string(r) + ")");
}

template <class S>
void fill(IdentityRecord& rec, const UEAElement<S>& lhs, const UEAElement<S>& rhs) {
  rec.lhs_terms = lhs.size();
  rec.rhs_terms = rhs.size();
  const auto residue = lhs - rhs;
  rec.residue_term_count = residue.size();
  if (!residue.is_zero()) rec.residue = residue.to_string();
}

}  // namespace

IdentityRecord verify_key_identity_symbolic(int m, int r) {
  require_orders(m, r);
  const auto alg = symbolic_witt_algebra({"k", "s", "p", "q"});
  const auto& lat = alg->lattice();
  const auto k = lat.generator("k"), s = lat.generator("s"), p = lat.generator("p"), q = lat.generator("q");
  const auto h = lat.generator("1");
  IdentityRecord rec;
  rec.mode = "symbolic";
  rec.m = m;
  rec.r = r;
  fill(rec, key_identity_lhs(alg, m, r, k, s, p, q, h), key_identity_rhs(alg, m, r, k, s, p, q, h));
  return rec;
}

std::vector<IdentityRecord> verify_key_identity_grid(int m, int r, long lo, long hi, bool check_intro) {
  require_orders(m, r);
  if (check_intro && m != r) throw PreconditionError("the intro form applies only when m == r");
  if (lo > hi) throw PreconditionError("empty grid range");
  const auto alg = witt_algebra();
  const LatticePoint h = lattice_point({1});
  std::vector<IdentityRecord> out;
  for (long k = lo; k <= hi; ++k)
    for (long s = lo; s <= hi; ++s)
      for (long p = lo; p <= hi; ++p)
        for (long q = lo; q <= hi; ++q) {
          const auto K = lattice_point({k}), S = lattice_point({s}), P = lattice_point({p}), Q = lattice_point({q});
          IdentityRecord rec;
          rec.mode = "grid";
          rec.m = m;
          rec.r = r;
          rec.tuple = std::array<long, 4>{k, s, p, q};
          const auto lhs = key_identity_lhs(alg, m, r, K, S, P, Q, h);
          fill(rec, lhs, key_identity_rhs(alg, m, r, K, S, P, Q, h));
          if (check_intro && rec.pass()) {
            const auto intro = intro_identity_rhs(alg, m, K, S, P, Q, h);
            const auto residue = lhs - intro;
            rec.residue_term_count = residue.size();
            if (!residue.is_zero()) rec.residue = "intro form: " + residue.to_string();
          }
          out.push_back(std::move(rec));
        }
  return out;
}

IdentityRecord verify_intro_identity(int m) {
  require_orders(m, m);
  const auto alg = symbolic_witt_algebra({"k", "s", "p", "q"});
  const auto& lat = alg->lattice();
  const auto k = lat.generator("k"), s = lat.generator("s"), p = lat.generator("p"), q = lat.generator("q");
  const auto h = lat.generator("1");
  IdentityRecord rec;
  rec.mode = "intro";
  rec.m = m;
  rec.r = m;
  fill(rec, key_identity_lhs(alg, m, m, k, s, p, q, h), intro_identity_rhs(alg, m, k, s, p, q, h));
  return rec;
}

IdentityRecord verify_solenoidal_identity(int m, int r, const std::vector<long>& h) {
  require_orders(m, r);
  const int n = static_cast<int>(h.size());
  const auto alg = solenoidal_algebra(n, {"k", "s", "p", "q"});
  const auto& lat = alg->lattice();
  const auto k = lat.generator("k"), s = lat.generator("s"), p = lat.generator("p"), q = lat.generator("q");
  LatticePoint step = lat.zero();
  for (int a = 0; a < n; ++a) step(a) = h[a];
  IdentityRecord rec;
  rec.mode = "solenoidal";
  rec.m = m;
  rec.r = r;
  rec.h = h;
  fill(rec, key_identity_lhs(alg, m, r, k, s, p, q, step), key_identity_rhs(alg, m, r, k, s, p, q, step));
  return rec;
}

}  // namespace wittforge
