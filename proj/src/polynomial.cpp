#include "wittforge/scalar/polynomial.hpp"

#include <cctype>

namespace wittforge {

SymbolContext make_symbols(std::vector<std::string> names) {
  if (names.size() > static_cast<std::size_t>(kMaxSymbols))
    throw PreconditionError("too many symbols (max " + std::to_string(kMaxSymbols) + ")");
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j]) throw PreconditionError("duplicate symbol '" + names[i] + "'");
  return std::make_shared<const SymbolSet>(std::move(names));
}

int symbol_index(const SymbolContext& ctx, std::string_view name) {
  if (!ctx) return -1;
  for (std::size_t i = 0; i < ctx->size(); ++i)
    if ((*ctx)[i] == name) return static_cast<int>(i);
  return -1;
}

bool same_symbols(const SymbolContext& a, const SymbolContext& b) {
  if (a == b) return true;
  if (!a || !b) return (!a || a->empty()) && (!b || b->empty());
  return *a == *b;
}

SymbolContext join_symbols(const SymbolContext& a, const SymbolContext& b) {
  if (!a || a->empty()) return b;
  if (!b || b->empty()) return a;
  if (a == b || *a == *b) return a;
  auto show = [](const SymbolContext& c) {
    std::string s = "{";
    for (std::size_t i = 0; i < c->size(); ++i) s += (i ? "," : "") + (*c)[i];
    return s + "}";
  };
  throw ContextMismatch("polynomials over different symbol sets " + show(a) + " and " + show(b));
}

namespace detail {

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != ' ') out += c;
  return out;
}

}  // namespace

// Splits "a - b + (c + d)*e" at top-level binary +/-; parentheses are opaque.
std::vector<std::pair<char, std::string>> split_signed_terms(std::string_view text) {
  std::vector<std::pair<char, std::string>> out;
  std::string current;
  char sign = '+';
  int depth = 0;
  bool seen = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == '+' || c == '-')) {
      const std::string t = strip(current);
      // A sign directly after '^' or '*' or at the very start belongs to the term.
      if (t.empty() && !seen) {
        sign = (c == '-') ? (sign == '-' ? '+' : '-') : sign;
        continue;
      }
      if (!t.empty() && (t.back() == '^' || t.back() == '*' || t.back() == '/')) {
        current += c;
        continue;
      }
      if (t.empty()) throw ParseError("dangling operator in '" + std::string(text) + "'");
      out.emplace_back(sign, t);
      seen = true;
      current.clear();
      sign = c;
      continue;
    }
    current += c;
  }
  if (depth != 0) throw ParseError("unbalanced parentheses in '" + std::string(text) + "'");
  const std::string t = strip(current);
  if (t.empty()) throw ParseError("empty polynomial term in '" + std::string(text) + "'");
  if (!(t == "0" && out.empty())) out.emplace_back(sign, t);
  return out;
}

std::vector<std::string> split_factors(std::string_view term) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (char c : term) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && c == '*') {
      if (current.empty()) throw ParseError("empty factor in '" + std::string(term) + "'");
      out.push_back(current);
      current.clear();
      continue;
    }
    current += c;
  }
  if (current.empty()) throw ParseError("empty factor in '" + std::string(term) + "'");
  out.push_back(current);
  return out;
}

}  // namespace detail

}  // namespace wittforge
