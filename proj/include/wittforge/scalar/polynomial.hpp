#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wittforge/error.hpp"
#include "wittforge/scalar/scalar_traits.hpp"

namespace wittforge {

inline constexpr int kMaxSymbols = 24;

using SymbolSet = std::vector<std::string>;
/// Shared, immutable, ordered list of symbol names. Polynomials combine only
/// when their contexts agree (or one of them is a bare constant).
using SymbolContext = std::shared_ptr<const SymbolSet>;

SymbolContext make_symbols(std::vector<std::string> names);
int symbol_index(const SymbolContext& ctx, std::string_view name);  // -1 when absent
bool same_symbols(const SymbolContext& a, const SymbolContext& b);
SymbolContext join_symbols(const SymbolContext& a, const SymbolContext& b);

struct Exponents {
  std::array<std::uint16_t, kMaxSymbols> e{};
  std::uint32_t degree = 0;

  friend bool operator==(const Exponents& a, const Exponents& b) { return a.e == b.e; }
  Exponents& operator+=(const Exponents& o) {
    for (int i = 0; i < kMaxSymbols; ++i) e[i] = static_cast<std::uint16_t>(e[i] + o.e[i]);
    degree += o.degree;
    return *this;
  }
};

/// Graded lexicographic order, larger monomials first.
struct GradedLexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    if (a.degree != b.degree) return a.degree > b.degree;
    return a.e > b.e;
  }
};

/// Sparse multivariate polynomial over an exact field.
///
/// Terms are kept sorted in graded lexicographic order (declared symbol order)
/// with no zero coefficients, so structural equality is polynomial equality.
template <ExactField F>
class Polynomial {
 public:
  using Coefficient = F;
  using Term = std::pair<Exponents, F>;

  Polynomial() = default;
  template <std::integral I>
  Polynomial(I c) : Polynomial(F(c)) {}  // NOLINT(google-explicit-constructor)
  Polynomial(const Rational& c) requires(!std::same_as<F, Rational>) : Polynomial(F(c)) {}  // NOLINT
  Polynomial(F c) {  // NOLINT(google-explicit-constructor)
    if (!wittforge::is_zero(c)) terms_.emplace_back(Exponents{}, std::move(c));
  }
  Polynomial(SymbolContext ctx, F c) : Polynomial(std::move(c)) { ctx_ = std::move(ctx); }

  static Polynomial variable(const SymbolContext& ctx, std::string_view name) {
    const int i = symbol_index(ctx, name);
    if (i < 0) throw MissingSymbol(std::string(name));
    return variable(ctx, i);
  }
  static Polynomial variable(const SymbolContext& ctx, int index) {
    Polynomial p;
    p.ctx_ = ctx;
    Exponents x;
    x.e[index] = 1;
    x.degree = 1;
    p.terms_.emplace_back(x, F(1));
    return p;
  }
  static Polynomial monomial(const SymbolContext& ctx, const Exponents& x, F c) {
    Polynomial p(ctx, F(0));
    if (!wittforge::is_zero(c)) p.terms_.emplace_back(x, std::move(c));
    return p;
  }

  /// Parses the canonical text produced by to_string().
  static Polynomial parse(std::string_view text, const SymbolContext& ctx);

  const SymbolContext& context() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.degree == 0); }
  F constant_term() const {
    if (!terms_.empty() && terms_.back().first.degree == 0) return terms_.back().second;
    return F(0);
  }
  int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().first.degree); }
  int degree_in(int var) const {
    int d = -1;
    for (const auto& [x, c] : terms_) d = std::max<int>(d, x.e[var]);
    return d;
  }
  /// Total degree counted only over the listed symbol positions.
  int degree_in(std::span<const int> vars) const {
    int d = -1;
    for (const auto& [x, c] : terms_) {
      int t = 0;
      for (int v : vars) t += x.e[v];
      d = std::max(d, t);
    }
    return d;
  }

  Polynomial with_context(SymbolContext ctx) const {
    if (ctx_ && !ctx_->empty() && !same_symbols(ctx_, ctx))
      throw ContextMismatch("with_context cannot rename symbols; use in_context");
    Polynomial p = *this;
    p.ctx_ = std::move(ctx);
    return p;
  }

  /// Re-expresses the polynomial over another symbol set, matching by name.
  Polynomial in_context(const SymbolContext& target) const {
    if (same_symbols(ctx_, target) || terms_.empty() || is_constant()) return with_context_unchecked(target);
    std::vector<int> map(ctx_->size());
    for (std::size_t i = 0; i < ctx_->size(); ++i) map[i] = symbol_index(target, (*ctx_)[i]);
    Polynomial out;
    out.ctx_ = target;
    for (const auto& [x, c] : terms_) {
      Exponents y;
      for (std::size_t i = 0; i < ctx_->size(); ++i) {
        if (x.e[i] == 0) continue;
        if (map[i] < 0) throw MissingSymbol((*ctx_)[i]);
        y.e[map[i]] = x.e[i];
      }
      y.degree = x.degree;
      out.terms_.emplace_back(y, c);
    }
    out.normalize();
    return out;
  }

  /// Evaluates with values[i] substituted for symbol i of this polynomial's context.
  template <class R>
  R evaluate(std::span<const R> values) const {
    if (terms_.empty()) return R(0);
    const std::size_t n = ctx_ ? ctx_->size() : 0;
    if (values.size() < n) throw PreconditionError("evaluate: too few values for symbol context");
    std::vector<std::vector<R>> powers(n);
    R out(0);
    for (const auto& [x, c] : terms_) {
      R t(c);
      for (std::size_t i = 0; i < n; ++i) {
        const int e = x.e[i];
        if (e == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(values[i]);
        while (static_cast<int>(pw.size()) < e) pw.push_back(pw.back() * values[i]);
        t *= pw[e - 1];
      }
      out += t;
    }
    return out;
  }

  /// Exact evaluation; every symbol that occurs must be assigned.
  F specialize(const std::map<std::string, F, std::less<>>& assignment) const {
    const std::size_t n = ctx_ ? ctx_->size() : 0;
    std::vector<F> values(n, F(0));
    std::vector<bool> used(n, false);
    for (const auto& [x, c] : terms_)
      for (std::size_t i = 0; i < n; ++i)
        if (x.e[i] != 0) used[i] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!used[i]) continue;
      auto it = assignment.find((*ctx_)[i]);
      if (it == assignment.end()) throw MissingSymbol((*ctx_)[i]);
      values[i] = it->second;
    }
    return evaluate<F>(std::span<const F>(values));
  }

  /// Coefficients of var^0, var^1, ... as polynomials in the remaining symbols.
  std::vector<Polynomial> coefficients_in(int var) const {
    std::vector<Polynomial> out(std::max(degree_in(var) + 1, 0), Polynomial(ctx_, F(0)));
    for (const auto& [x, c] : terms_) {
      Exponents y = x;
      const int d = y.e[var];
      y.e[var] = 0;
      y.degree -= d;
      out[d].terms_.emplace_back(y, c);
    }
    for (auto& p : out) p.normalize();
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = add(*this, o, false); }
  Polynomial& operator-=(const Polynomial& o) { return *this = add(*this, o, true); }
  Polynomial& operator*=(const Polynomial& o) { return *this = mul(*this, o); }
  Polynomial& operator*=(const F& c) {
    if (wittforge::is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return add(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return add(a, b, true); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return mul(a, b); }
  Polynomial operator-() const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.second = -t.second;
    return p;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (!a.is_constant() || !b.is_constant()) join_symbols(a.ctx_, b.ctx_);
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].first == b.terms_[i].first) || !(a.terms_[i].second == b.terms_[i].second))
        return false;
    return true;
  }

  std::string to_string() const;

  /// Re-sorts and merges terms; a no-op on values produced by the public API.
  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return GradedLexGreater{}(a.first, b.first); });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().first == t.first)
        merged.back().second += t.second;
      else
        merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const Term& t) { return wittforge::is_zero(t.second); });
    terms_ = std::move(merged);
  }

 private:
  Polynomial with_context_unchecked(SymbolContext ctx) const {
    Polynomial p = *this;
    p.ctx_ = std::move(ctx);
    return p;
  }

  static SymbolContext result_context(const Polynomial& a, const Polynomial& b) {
    if (a.is_constant() && !(b.is_constant())) return b.ctx_ ? b.ctx_ : a.ctx_;
    if (b.is_constant() && !(a.is_constant())) return a.ctx_ ? a.ctx_ : b.ctx_;
    return join_symbols(a.ctx_, b.ctx_);
  }

  static Polynomial add(const Polynomial& a, const Polynomial& b, bool subtract) {
    Polynomial out;
    out.ctx_ = result_context(a, b);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    const GradedLexGreater gt;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && gt(a.terms_[i].first, b.terms_[j].first))) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || gt(b.terms_[j].first, a.terms_[i].first)) {
        out.terms_.emplace_back(b.terms_[j].first, subtract ? -b.terms_[j].second : b.terms_[j].second);
        ++j;
      } else {
        F c = subtract ? a.terms_[i].second - b.terms_[j].second : a.terms_[i].second + b.terms_[j].second;
        if (!wittforge::is_zero(c)) out.terms_.emplace_back(a.terms_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    return out;
  }

  static Polynomial mul(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    out.ctx_ = result_context(a, b);
    if (a.terms_.empty() || b.terms_.empty()) return out;
    out.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [x, c] : a.terms_)
      for (const auto& [y, d] : b.terms_) {
        Exponents z = x;
        z += y;
        out.terms_.emplace_back(z, c * d);
      }
    out.normalize();
    return out;
  }

  SymbolContext ctx_;
  std::vector<Term> terms_;
};

template <ExactField F>
bool is_zero(const Polynomial<F>& p) {
  return p.is_zero();
}

template <ExactField F>
std::ostream& operator<<(std::ostream& os, const Polynomial<F>& p) {
  return os << p.to_string();
}

template <ExactField F>
std::string Polynomial<F>::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [x, c] : terms_) {
    const bool neg = CoefficientText<F>::negative(c);
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; ctx_ && i < ctx_->size(); ++i) {
      if (x.e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += (*ctx_)[i];
      if (x.e[i] > 1) mono += "^" + std::to_string(x.e[i]);
    }
    const bool unit = neg ? CoefficientText<F>::unit(-c) : CoefficientText<F>::unit(c);
    if (mono.empty())
      out += CoefficientText<F>::magnitude(c);
    else if (unit)
      out += mono;
    else
      out += CoefficientText<F>::magnitude(c) + "*" + mono;
  }
  return out;
}

/// Same polynomial with coefficients mapped into another field.
template <ExactField G, ExactField F>
Polynomial<G> map_coefficients(const Polynomial<F>& p) {
  Polynomial<G> out(p.context(), G(0));
  for (const auto& [x, c] : p.terms()) out += Polynomial<G>::monomial(p.context(), x, G(c));
  return out;
}

namespace detail {

std::vector<std::pair<char, std::string>> split_signed_terms(std::string_view text);
std::vector<std::string> split_factors(std::string_view term);

}  // namespace detail

template <ExactField F>
Polynomial<F> Polynomial<F>::parse(std::string_view text, const SymbolContext& ctx) {
  Polynomial out(ctx, F(0));
  for (const auto& [sign, term] : detail::split_signed_terms(text)) {
    F coeff(1);
    Exponents x;
    for (const auto& factor : detail::split_factors(term)) {
      const char c0 = factor.front();
      if (c0 == '(' || (c0 >= '0' && c0 <= '9')) {
        coeff *= CoefficientText<F>::parse(factor);
        continue;
      }
      const auto caret = factor.find('^');
      const std::string name = factor.substr(0, caret);
      const int idx = symbol_index(ctx, name);
      if (idx < 0) throw ParseError("unknown symbol '" + name + "' in polynomial '" + std::string(text) + "'");
      long e = 1;
      if (caret != std::string::npos) e = Rational::parse(factor.substr(caret + 1)).to_long();
      if (e < 0) throw ParseError("negative exponent in '" + std::string(text) + "'");
      x.e[idx] = static_cast<std::uint16_t>(x.e[idx] + e);
      x.degree += static_cast<std::uint32_t>(e);
    }
    if (sign == '-') coeff = -coeff;
    out.terms_.emplace_back(x, coeff);
  }
  out.normalize();
  return out;
}

}  // namespace wittforge

namespace Eigen {

template <wittforge::ExactField F>
struct NumTraits<wittforge::Polynomial<F>> : GenericNumTraits<wittforge::Polynomial<F>> {
  using Real = wittforge::Polynomial<F>;
  using NonInteger = wittforge::Polynomial<F>;
  using Nested = wittforge::Polynomial<F>;
  using Literal = wittforge::Polynomial<F>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 64,
    MulCost = 256
  };
  static int digits10() { return 0; }
  static int max_digits10() { return 0; }
};

}  // namespace Eigen
