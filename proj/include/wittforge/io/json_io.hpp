#pragma once

#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "wittforge/acover/cover.hpp"

namespace wittforge {

using Json = nlohmann::ordered_json;

namespace detail {

inline void require_keys(const Json& j, const std::string& where, std::initializer_list<const char*> required,
                         std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  std::set<std::string> allowed;
  for (const char* k : required) {
    allowed.insert(k);
    if (!j.contains(k)) throw SchemaError(where + ": missing key '" + k + "'");
  }
  for (const char* k : optional) allowed.insert(k);
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw SchemaError(where + ": unknown key '" + k + "'");
}

template <class T>
T get_as(const Json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError(where + ": wrong type");
  }
}

inline std::string scalar_string(const Json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long>());
  throw SchemaError(where + ": expected a number or a string");
}

template <ExactField F>
F parse_scalar(const Json& j, const std::string& where) {
  try {
    return CoefficientText<F>::parse(scalar_string(j, where));
  } catch (const ParseError& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

template <ExactField F>
Json matrix_to_json(const MatrixX<F>& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(scalar_text(m(i, j)));
    out.push_back(row);
  }
  return out;
}

template <ExactField F>
MatrixX<F> matrix_from_json(const Json& j, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) throw SchemaError(where + ": expected " + std::to_string(dim) + " rows");
  MatrixX<F> m = zero_matrix<F>(dim, dim);
  for (int r = 0; r < dim; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != dim)
      throw SchemaError(where + ": row " + std::to_string(r) + " must have " + std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c) m(r, c) = parse_scalar<F>(j[r][c], where);
  }
  return m;
}

inline int label_index(const std::vector<std::string>& labels, const Json& j, const std::string& where) {
  const auto name = get_as<std::string>(j, where);
  auto it = std::find(labels.begin(), labels.end(), name);
  if (it == labels.end()) throw SchemaError(where + ": unknown fiber label '" + name + "'");
  return static_cast<int>(it - labels.begin());
}

inline Offset offset_from_json(const Json& j, int n, const std::string& where) {
  const auto o = get_as<std::vector<long>>(j, where);
  if (static_cast<int>(o.size()) != n) throw SchemaError(where + ": offset must have " + std::to_string(n) + " entries");
  return o;
}

template <ExactField F>
Polynomial<F> poly_from_json(const Json& j, const SymbolContext& ctx, const std::string& where) {
  try {
    return Polynomial<F>::parse(scalar_string(j, where), ctx);
  } catch (const Error& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

}  // namespace detail

template <ExactField F>
Json module_to_json(const PolyWeightModule<F>& M) {
  Json j;
  j["algebra"] = M.algebra_name();
  j["field"] = M.field_name();
  j["params"] = M.params();
  Json beta = Json::array();
  for (const auto& b : M.beta()) beta.push_back(b.to_string());
  j["beta"] = beta;
  j["fiber"] = M.fiber();
  if (M.degree_zero()) j["degree_zero"] = true;
  Json terms = Json::array();
  for (const auto& t : M.terms()) {
    Json x;
    x["dir"] = t.dir + 1;
    x["src"] = M.fiber()[t.src];
    x["tgt"] = M.fiber()[t.tgt];
    x["poly"] = t.coeff.to_string();
    if (t.constraint) x["constraint"] = {{"m", t.constraint->m}, {"s", t.constraint->s}, {"c", t.constraint->c}};
    terms.push_back(x);
  }
  j["terms"] = terms;
  Json punct = Json::array();
  for (const auto& p : M.punctures()) {
    Json f = Json::array();
    for (int i : p.fiber) f.push_back(M.fiber()[i]);
    punct.push_back({{"offset", p.offset}, {"fiber", f}});
  }
  j["punctures"] = punct;
  Json loc = Json::array();
  for (const auto& l : M.localized()) loc.push_back({{"fiber", M.fiber()[l.fiber]}, {"offsets", l.offsets}});
  j["localized"] = loc;
  return j;
}

template <ExactField F>
PolyWeightModule<F> module_from_json_as(const Json& j) {
  detail::require_keys(j, "module", {"algebra", "fiber", "terms"},
                       {"field", "params", "beta", "degree_zero", "punctures", "localized"});
  const auto alg = detail::get_as<std::string>(j["algebra"], "module.algebra");
  if (alg.size() < 2 || alg[0] != 'W') throw SchemaError("module.algebra: expected W1..W6");
  int n = 0;
  try {
    n = std::stoi(alg.substr(1));
  } catch (const std::exception&) {
    throw SchemaError("module.algebra: expected W1..W6");
  }
  if (n < 1 || n > 6) throw SchemaError("module.algebra: expected W1..W6");
  const auto fiber = detail::get_as<std::vector<std::string>>(j["fiber"], "module.fiber");
  std::vector<std::string> params;
  if (j.contains("params")) params = detail::get_as<std::vector<std::string>>(j["params"], "module.params");
  PolyWeightModule<F> M;
  try {
    M = PolyWeightModule<F>(n, fiber, params);
  } catch (const PreconditionError& e) {
    throw SchemaError(std::string("module: ") + e.what());
  }
  if (j.contains("degree_zero")) M.set_degree_zero(detail::get_as<bool>(j["degree_zero"], "module.degree_zero"));
  if (j.contains("beta")) {
    if (!j["beta"].is_array() || static_cast<int>(j["beta"].size()) != n)
      throw SchemaError("module.beta: expected " + std::to_string(n) + " entries");
    std::vector<Polynomial<F>> beta;
    for (const auto& b : j["beta"]) beta.push_back(detail::poly_from_json<F>(b, M.symbols(), "module.beta"));
    try {
      M.set_beta(beta);
    } catch (const PreconditionError& e) {
      throw SchemaError(std::string("module.beta: ") + e.what());
    }
  }
  if (!j["terms"].is_array()) throw SchemaError("module.terms: expected an array");
  for (const auto& t : j["terms"]) {
    detail::require_keys(t, "module.terms[]", {"dir", "src", "tgt", "poly"}, {"constraint"});
    const int dir = detail::get_as<int>(t["dir"], "module.terms[].dir");
    if (dir < 1 || dir > n) throw SchemaError("module.terms[].dir: out of range");
    const int src = detail::label_index(fiber, t["src"], "module.terms[].src");
    const int tgt = detail::label_index(fiber, t["tgt"], "module.terms[].tgt");
    const auto poly = detail::poly_from_json<F>(t["poly"], M.symbols(), "module.terms[].poly");
    std::optional<AffineConstraint> c;
    if (t.contains("constraint")) {
      const auto& k = t["constraint"];
      detail::require_keys(k, "module.terms[].constraint", {"m", "s", "c"});
      c = AffineConstraint{detail::offset_from_json(k["m"], n, "constraint.m"),
                           detail::offset_from_json(k["s"], n, "constraint.s"),
                           detail::get_as<long>(k["c"], "constraint.c")};
    }
    M.add_term(dir - 1, src, tgt, poly, c);
  }
  if (j.contains("punctures")) {
    if (!j["punctures"].is_array()) throw SchemaError("module.punctures: expected an array");
    for (const auto& p : j["punctures"]) {
      detail::require_keys(p, "module.punctures[]", {"offset", "fiber"});
      Puncture pc{detail::offset_from_json(p["offset"], n, "module.punctures[].offset"), {}};
      if (!p["fiber"].is_array()) throw SchemaError("module.punctures[].fiber: expected an array");
      for (const auto& f : p["fiber"]) pc.fiber.push_back(detail::label_index(fiber, f, "module.punctures[].fiber"));
      M.add_puncture(pc);
    }
  }
  if (j.contains("localized")) {
    if (!j["localized"].is_array()) throw SchemaError("module.localized: expected an array");
    for (const auto& l : j["localized"]) {
      detail::require_keys(l, "module.localized[]", {"fiber", "offsets"});
      Localized loc{detail::label_index(fiber, l["fiber"], "module.localized[].fiber"), {}};
      if (!l["offsets"].is_array()) throw SchemaError("module.localized[].offsets: expected an array");
      for (const auto& o : l["offsets"]) loc.offsets.push_back(detail::offset_from_json(o, n, "module.localized[].offsets"));
      M.add_localized(loc);
    }
  }
  return M;
}

/// Dispatches on "field": "Q" or "Q(sqrt(d))".
inline AnyModule module_from_json(const Json& j) {
  const std::string field = j.is_object() && j.contains("field") ? detail::get_as<std::string>(j["field"], "module.field") : "Q";
  if (field == "Q") return module_from_json_as<Rational>(j);
  if (field.rfind("Q(sqrt(", 0) == 0 && field.size() > 9 && field.substr(field.size() - 2) == "))")
    return module_from_json_as<QuadExt>(j);
  throw SchemaError("module.field: expected Q or Q(sqrt(d))");
}

inline Json gl_rep_to_json(const GLnRepData<Rational>& U) {
  Json units = Json::array();
  for (int p = 0; p < U.n(); ++p)
    for (int a = 0; a < U.n(); ++a)
      if (!is_zero_matrix<Rational>(U.E(p, a)))
        units.push_back({{"p", p + 1}, {"a", a + 1}, {"matrix", detail::matrix_to_json<Rational>(U.E(p, a))}});
  return {{"kind", "gl"}, {"n", U.n()}, {"dim", U.dim()}, {"labels", U.labels()}, {"units", units}};
}

inline Json jets_rep_to_json(const JPlusRepData<Rational>& rho) {
  Json blocks = Json::array();
  for (const auto& [key, m] : rho.blocks())
    blocks.push_back({{"k", key.first}, {"dir", key.second + 1}, {"matrix", detail::matrix_to_json<Rational>(m)}});
  return {{"kind", "jets"}, {"n", rho.n()}, {"dim", rho.dim()}, {"cutoff", rho.cutoff()}, {"blocks", blocks}};
}

inline GLnRepData<Rational> gl_rep_from_json(const Json& j) {
  detail::require_keys(j, "rep", {"kind", "n", "dim", "units"}, {"labels"});
  if (j["kind"] != "gl") throw SchemaError("rep.kind: expected \"gl\"");
  const int n = detail::get_as<int>(j["n"], "rep.n"), dim = detail::get_as<int>(j["dim"], "rep.dim");
  if (n < 1 || dim < 1) throw SchemaError("rep: n and dim must be positive");
  std::map<std::pair<int, int>, MatrixX<Rational>> units;
  for (const auto& u : j["units"]) {
    detail::require_keys(u, "rep.units[]", {"p", "a", "matrix"});
    const int p = detail::get_as<int>(u["p"], "rep.units[].p"), a = detail::get_as<int>(u["a"], "rep.units[].a");
    if (p < 1 || p > n || a < 1 || a > n) throw SchemaError("rep.units[]: index out of range");
    units[{p - 1, a - 1}] = detail::matrix_from_json<Rational>(u["matrix"], dim, "rep.units[].matrix");
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = detail::get_as<std::vector<std::string>>(j["labels"], "rep.labels");
  return GLnRepData<Rational>(n, dim, std::move(units), std::move(labels));
}

inline JPlusRepData<Rational> jets_rep_from_json(const Json& j) {
  detail::require_keys(j, "rep", {"kind", "n", "dim", "cutoff", "blocks"});
  if (j["kind"] != "jets") throw SchemaError("rep.kind: expected \"jets\"");
  const int n = detail::get_as<int>(j["n"], "rep.n"), dim = detail::get_as<int>(j["dim"], "rep.dim");
  const int cutoff = detail::get_as<int>(j["cutoff"], "rep.cutoff");
  if (n < 1 || dim < 1 || cutoff < 1) throw SchemaError("rep: n, dim and cutoff must be positive");
  std::map<std::pair<MultiIndex, int>, MatrixX<Rational>> blocks;
  for (const auto& b : j["blocks"]) {
    detail::require_keys(b, "rep.blocks[]", {"k", "dir", "matrix"});
    const auto k = detail::get_as<std::vector<int>>(b["k"], "rep.blocks[].k");
    const int dir = detail::get_as<int>(b["dir"], "rep.blocks[].dir");
    if (static_cast<int>(k.size()) != n || dir < 1 || dir > n) throw SchemaError("rep.blocks[]: index out of range");
    blocks[{k, dir - 1}] = detail::matrix_from_json<Rational>(b["matrix"], dim, "rep.blocks[].matrix");
  }
  return JPlusRepData<Rational>(n, dim, cutoff, std::move(blocks));
}

template <ExactField F>
Json quasi_poly_to_json(const QuasiPolyVector<F>& v, const std::vector<std::string>& labels) {
  Json poly = Json::object(), exc = Json::array();
  for (int r = 0; r < v.fiber_dim(); ++r) {
    const auto p = v.poly_component(r);
    if (!p.is_zero()) poly[labels[r]] = p.to_string();
  }
  for (const auto& [m, x] : v.exceptional()) {
    Json vals = Json::object();
    for (int r = 0; r < v.fiber_dim(); ++r)
      if (!is_zero(x(r))) vals[labels[r]] = scalar_text(x(r));
    exc.push_back({{"mode", m}, {"correction", vals}});
  }
  return {{"poly", poly}, {"exceptional", exc}};
}

/// Module schema of the induced action plus the A-action, the bases and the witnesses.
template <ExactField F>
Json cover_to_json(const ACover<F>& C, const CoverModule<F>& cov) {
  Json j = module_to_json(cov.action);
  Json a = Json::array();
  for (Eigen::Index r = 0; r < cov.a_action.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < cov.a_action.cols(); ++c) row.push_back(cov.a_action(r, c).to_string());
    a.push_back(row);
  }
  j["a_action"] = a;
  j["degree"] = cov.degree;
  j["base_degree"] = cov.base_degree;
  j["attempts"] = cov.attempts;
  Json bases = Json::array(), witnesses = Json::array();
  const auto& fiber = C.module().fiber();
  for (long w = -cov.window; w <= cov.window; ++w) {
    const auto& B = cov.bases.at(w);
    Json vecs = Json::array();
    for (int i = 0; i < B.rank(); ++i) vecs.push_back({{"label", B.labels[i]}, {"value", quasi_poly_to_json(B.vectors[i], fiber)}});
    bases.push_back({{"weight", w}, {"rank", B.rank()}, {"vectors", vecs}});
    for (const auto& g : B.witnesses) {
      Json coeffs = Json::array();
      for (Eigen::Index i = 0; i < g.coefficients.size(); ++i) coeffs.push_back(scalar_text(g.coefficients(i)));
      witnesses.push_back({{"generator", "psi(e[" + std::to_string(g.k) + "], " + fiber[g.t] + "[" + std::to_string(g.j) + "])"},
                           {"weight", w},
                           {"coefficients", coeffs}});
    }
  }
  j["bases"] = bases;
  j["witnesses"] = witnesses;
  return j;
}

inline Json report_to_json(const CheckReport& r) {
  Json j;
  j["check"] = r.check;
  j["pass"] = r.pass();
  j["symbolic_pass"] = r.symbolic_pass;
  j["residues"] = r.residues;
  j["window_checked"] = r.window_checked;
  j["window_failures"] = r.window_failures;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

}  // namespace wittforge
