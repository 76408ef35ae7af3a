#ifndef TRILIE_IO_HPP
#define TRILIE_IO_HPP

// JSON file formats. Indices are 1-based in files and 0-based in memory; all
// scalars are strings "p" or "p/q".

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "compatible.hpp"
#include "extensions.hpp"

namespace trilie::io {

using Json = nlohmann::ordered_json;

/// FNV-1a, 64 bit, as 16 hex digits.
inline std::string digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

struct Document {
  Json json;
  std::string bytes;
};

inline Document read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  Document doc{Json(), ss.str()};
  try {
    doc.json = Json::parse(doc.bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path, std::string("malformed JSON (") + e.what() + ")");
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Field access

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where.empty() ? key : where + "." + key, "missing field");
  return *it;
}

inline std::string join(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

inline std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

inline std::size_t count(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(where, "expected a nonnegative integer");
  return static_cast<std::size_t>(j.get<long long>());
}

inline Scalar scalar(const Json& j, const std::string& where) {
  if (j.is_string()) return parse_scalar(j.get<std::string>(), where);
  if (j.is_number_integer()) return Scalar(mpz_class(j.dump()));
  throw ParseError(where, "expected a rational written as a string \"p/q\"");
}

/// 1-based index in [1, d], returned 0-based.
inline Index index(const Json& j, std::size_t d, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where, "expected an integer index");
  long long v = j.get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > d)
    throw ParseError(where, "index " + std::to_string(v) + " out of range 1.." + std::to_string(d));
  return static_cast<Index>(v - 1);
}

inline std::vector<Index> indices(const Json& j, std::size_t n, std::size_t d, const std::string& where) {
  if (!j.is_array() || j.size() != n) throw ParseError(where, "expected " + std::to_string(n) + " indices");
  std::vector<Index> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = index(j[i], d, at(where, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      if (out[i] == out[k]) throw ParseError(where, "repeated index");
  return out;
}

/// Sorts in place; returns the sign of the sorting permutation.
inline int sort_with_sign(Index* p, std::size_t n) {
  int sign = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k + 1 < n - i; ++k)
      if (p[k] > p[k + 1]) {
        std::swap(p[k], p[k + 1]);
        sign = -sign;
      }
  return sign;
}

inline Json index_list(const Index* p, std::size_t n) {
  Json out = Json::array();
  for (std::size_t i = 0; i < n; ++i) out.push_back(p[i] + 1);
  return out;
}

}  // namespace detail

inline Json to_json(const Scalar& s) { return to_string(s); }

inline Json to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(to_string(s));
  return out;
}

inline Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.dense_row(i)));
  return out;
}

inline Vector parse_vector(const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) throw ParseError(where, "expected a list of " + std::to_string(n) + " scalars");
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = detail::scalar(j[i], detail::at(where, i));
  return v;
}

/// Matrix as a list of rows; `rows`/`cols` of 0 mean "infer".
inline Matrix parse_matrix(const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected a list of rows");
  if (rows && j.size() != rows) throw ParseError(where, "expected " + std::to_string(rows) + " rows");
  if (!cols) cols = j.empty() ? 0 : (j[0].is_array() ? j[0].size() : 0);
  std::vector<Vector> data;
  for (std::size_t i = 0; i < j.size(); ++i) data.push_back(parse_vector(j[i], cols, detail::at(where, i)));
  return Matrix::from_dense(data, cols);
}

// ---------------------------------------------------------------------------
// Brackets, algebras and pairs

/// [ { "triple": [a,b,c], "value": { "k": "p/q", … } }, … ]
inline PreCochain parse_bracket(const Json& j, std::size_t d, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected a list of bracket entries");
  PreCochain pi(1, d, d);
  std::set<std::array<Index, 3>> seen;
  for (std::size_t e = 0; e < j.size(); ++e) {
    const std::string w = detail::at(where, e);
    auto t = detail::indices(detail::field(j[e], "triple", w), 3, d, detail::join(w, "triple"));
    std::array<Index, 3> tri = {t[0], t[1], t[2]};
    const int sign = detail::sort_with_sign(tri.data(), 3);
    if (!seen.insert(tri).second)
      throw ParseError(detail::join(w, "triple"), "duplicate entry for canonical triple [" + std::to_string(tri[0] + 1) +
                                                      "," + std::to_string(tri[1] + 1) + "," +
                                                      std::to_string(tri[2] + 1) + "]");
    const Json& val = detail::field(j[e], "value", w);
    if (!val.is_object()) throw ParseError(detail::join(w, "value"), "expected an object of target components");
    Vector v(d);
    for (auto it = val.begin(); it != val.end(); ++it) {
      const std::string vw = detail::join(detail::join(w, "value"), it.key());
      long long k = 0;
      try {
        std::size_t used = 0;
        k = std::stoll(it.key(), &used);
        if (used != it.key().size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(vw, "component key must be a basis index");
      }
      if (k < 1 || static_cast<std::size_t>(k) > d) throw ParseError(vw, "component index out of range");
      v[k - 1] = Scalar(sign) * detail::scalar(it.value(), vw);
    }
    set_admissible(pi, tri, v);
  }
  return pi;
}

inline Json bracket_to_json(const PreCochain& pi) {
  Json out = Json::array();
  const std::size_t d = pi.dim();
  for (Index a = 0; a < d; ++a)
    for (Index b = a + 1; b < d; ++b)
      for (Index c = b + 1; c < d; ++c) {
        Index args[3] = {a, b, c};
        Vector v = pi.eval(args);
        if (is_zero(v)) continue;
        Json val = Json::object();
        for (std::size_t t = 0; t < d; ++t)
          if (!is_zero(v[t])) val[std::to_string(t + 1)] = to_string(v[t]);
        out.push_back({{"triple", detail::index_list(args, 3)}, {"value", std::move(val)}});
      }
  return out;
}

inline std::size_t parse_dim(const Json& j, const std::string& where) {
  std::size_t d = detail::count(detail::field(j, "dim", where), detail::join(where, "dim"));
  if (d == 0) throw ParseError(detail::join(where, "dim"), "dimension must be positive");
  return d;
}

inline PreCochain parse_algebra(const Json& j, const std::string& where = {}) {
  const std::size_t d = parse_dim(j, where);
  return parse_bracket(detail::field(j, "bracket", where), d, detail::join(where, "bracket"));
}

inline Json algebra_to_json(const PreCochain& pi) {
  return {{"dim", pi.dim()}, {"bracket", bracket_to_json(pi)}};
}

inline CompatiblePair parse_pair(const Json& j, const std::string& where = {}) {
  const std::size_t d = parse_dim(j, where);
  return CompatiblePair(parse_bracket(detail::field(j, "bracket1", where), d, detail::join(where, "bracket1")),
                        parse_bracket(detail::field(j, "bracket2", where), d, detail::join(where, "bracket2")));
}

inline Json pair_to_json(const CompatiblePair& p) {
  return {{"dim", p.dim()}, {"bracket1", bracket_to_json(p.pi1)}, {"bracket2", bracket_to_json(p.pi2)}};
}

// ---------------------------------------------------------------------------
// Representations

/// [ { "pair": [a,b], "matrix": [[…]] }, … ]
inline Representation parse_rep_table(const Json& j, std::size_t g_dim, std::size_t m, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected a list of pair entries");
  Representation r = Representation::zero(g_dim, m);
  std::set<std::pair<Index, Index>> seen;
  for (std::size_t e = 0; e < j.size(); ++e) {
    const std::string w = detail::at(where, e);
    auto p = detail::indices(detail::field(j[e], "pair", w), 2, g_dim, detail::join(w, "pair"));
    if (!seen.insert({std::min(p[0], p[1]), std::max(p[0], p[1])}).second)
      throw ParseError(detail::join(w, "pair"), "duplicate entry for canonical pair");
    r.set(p[0], p[1], parse_matrix(detail::field(j[e], "matrix", w), m, m, detail::join(w, "matrix")));
  }
  return r;
}

inline Json rep_table_to_json(const Representation& r) {
  Json out = Json::array();
  for (Index a = 0; a < r.g_dim(); ++a)
    for (Index b = a + 1; b < r.g_dim(); ++b) {
      const Matrix& m = r.canonical(a, b);
      if (m.is_zero()) continue;
      Index p[2] = {a, b};
      out.push_back({{"pair", detail::index_list(p, 2)}, {"matrix", to_json(m)}});
    }
  return out;
}

inline std::size_t parse_module_dim(const Json& j, const std::string& where) {
  return detail::count(detail::field(j, "module_dim", where), detail::join(where, "module_dim"));
}

inline Representation parse_rep(const Json& j, std::size_t g_dim, const std::string& where = {}) {
  const std::size_t m = parse_module_dim(j, where);
  return parse_rep_table(detail::field(j, "rho", where), g_dim, m, detail::join(where, "rho"));
}

inline Json rep_to_json(const Representation& r) {
  return {{"module_dim", r.module_dim()}, {"rho", rep_table_to_json(r)}};
}

inline CompatibleRepresentation parse_compatible_rep(const Json& j, std::size_t g_dim, const std::string& where = {}) {
  const std::size_t m = parse_module_dim(j, where);
  return {parse_rep_table(detail::field(j, "rho", where), g_dim, m, detail::join(where, "rho")),
          parse_rep_table(detail::field(j, "mu", where), g_dim, m, detail::join(where, "mu"))};
}

inline Json compatible_rep_to_json(const CompatibleRepresentation& r) {
  return {{"module_dim", r.module_dim()}, {"rho", rep_table_to_json(r.rho)}, {"mu", rep_table_to_json(r.mu)}};
}

// ---------------------------------------------------------------------------
// Cochains

/// Either every entry uses "pairs" + "final" (raw form) or every entry uses
/// "pairs" + "triple" (admissible form, values spread over the triple's
/// permutations).
inline PreCochain parse_cochain(const Json& j, const std::string& where = {}) {
  using detail::join;
  const std::size_t w = detail::count(detail::field(j, "weight", where), join(where, "weight"));
  const std::size_t d = detail::count(detail::field(j, "ambient_dim", where), join(where, "ambient_dim"));
  const std::size_t m = detail::count(detail::field(j, "target_dim", where), join(where, "target_dim"));
  if (d == 0) throw ParseError(join(where, "ambient_dim"), "dimension must be positive");
  if (w > 8) throw ParseError(join(where, "weight"), "weight too large");
  const Json& entries = detail::field(j, "entries", where);
  if (!entries.is_array()) throw ParseError(join(where, "entries"), "expected a list");
  PreCochain c(w, d, m);
  int form = 0;  // 1 raw, 2 admissible
  std::set<std::vector<Index>> seen;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const std::string ew = detail::at(join(where, "entries"), e);
    const Json& entry = entries[e];
    const bool has_triple = entry.is_object() && entry.contains("triple");
    const int this_form = has_triple ? 2 : 1;
    if (form && form != this_form) throw ParseError(ew, "entries mix \"final\" and \"triple\" forms");
    form = this_form;
    const std::size_t npairs = has_triple ? (w == 0 ? 0 : w - 1) : w;
    if (has_triple && w == 0) throw ParseError(join(ew, "triple"), "weight-0 cochains have no triple");
    const Json& pairs = detail::field(entry, "pairs", ew);
    if (!pairs.is_array() || pairs.size() != npairs)
      throw ParseError(join(ew, "pairs"), "expected " + std::to_string(npairs) + " pairs");
    std::vector<Index> args(2 * w + 1);
    int sign = 1;
    for (std::size_t i = 0; i < npairs; ++i) {
      auto p = detail::indices(pairs[i], 2, d, detail::at(join(ew, "pairs"), i));
      sign *= detail::sort_with_sign(p.data(), 2);
      args[2 * i] = p[0];
      args[2 * i + 1] = p[1];
    }
    if (has_triple) {
      auto t = detail::indices(entry["triple"], 3, d, join(ew, "triple"));
      sign *= detail::sort_with_sign(t.data(), 3);
      std::copy(t.begin(), t.end(), args.begin() + static_cast<std::ptrdiff_t>(2 * w - 2));
    } else {
      args[2 * w] = detail::index(detail::field(entry, "final", ew), d, join(ew, "final"));
    }
    if (!seen.insert(args).second) throw ParseError(ew, "duplicate entry for a canonical key");
    Vector v = parse_vector(detail::field(entry, "value", ew), m, join(ew, "value"));
    if (sign < 0)
      for (auto& x : v) x = -x;
    if (has_triple)
      set_admissible(c, args, v);
    else
      c.set(args, v);
  }
  return c;
}

/// Admissible cochains of weight ≥ 1 are written in the triple form.
inline Json cochain_to_json(const PreCochain& c) {
  const std::size_t w = c.weight(), d = c.dim();
  Json entries = Json::array();
  auto pairs_json = [](const std::vector<Index>& args, std::size_t n) {
    Json ps = Json::array();
    for (std::size_t i = 0; i < n; ++i) ps.push_back(detail::index_list(&args[2 * i], 2));
    return ps;
  };
  if (w >= 1 && is_admissible(c).admissible) {
    for (std::size_t i = 0; i < admissible_key_count(w, d); ++i) {
      auto args = admissible_args(i, w, d);
      Vector v = c.eval(args);
      if (is_zero(v)) continue;
      entries.push_back(
          {{"pairs", pairs_json(args, w - 1)}, {"triple", detail::index_list(&args[2 * w - 2], 3)}, {"value", to_json(v)}});
    }
  } else {
    for (const auto& [key, v] : c.entries()) {
      auto args = decode_key(key, w, d);
      entries.push_back({{"pairs", pairs_json(args, w)}, {"final", args[2 * w] + 1}, {"value", to_json(v)}});
    }
  }
  return {{"weight", w}, {"ambient_dim", d}, {"target_dim", c.target_dim()}, {"entries", std::move(entries)}};
}

// ---------------------------------------------------------------------------
// Deformations, operators, extensions

inline DeformationData parse_deformation(const Json& j, const std::string& where = {}) {
  DeformationData d;
  d.omega1 = parse_cochain(detail::field(j, "omega1", where), detail::join(where, "omega1"));
  d.omega2 = parse_cochain(detail::field(j, "omega2", where), detail::join(where, "omega2"));
  if (j.contains("omega1_tilde"))
    d.omega1_tilde = parse_cochain(j["omega1_tilde"], detail::join(where, "omega1_tilde"));
  if (j.contains("omega2_tilde"))
    d.omega2_tilde = parse_cochain(j["omega2_tilde"], detail::join(where, "omega2_tilde"));
  return d;
}

inline Json deformation_to_json(const DeformationData& d) {
  Json out = {{"omega1", cochain_to_json(d.omega1)}, {"omega2", cochain_to_json(d.omega2)}};
  if (d.omega1_tilde) out["omega1_tilde"] = cochain_to_json(*d.omega1_tilde);
  if (d.omega2_tilde) out["omega2_tilde"] = cochain_to_json(*d.omega2_tilde);
  return out;
}

/// { "dim": d, "matrix": [[…]] } for an operator on g; "dim" is optional for
/// rectangular maps such as τ: g → V.
inline Matrix parse_operator(const Json& j, const std::string& where = {}) {
  std::size_t d = 0;
  if (j.is_object() && j.contains("dim")) d = parse_dim(j, where);
  return parse_matrix(detail::field(j, "matrix", where), d, d, detail::join(where, "matrix"));
}

inline Json operator_to_json(const Matrix& m) {
  Json out = Json::object();
  if (m.rows() == m.cols()) out["dim"] = m.rows();
  out["matrix"] = to_json(m);
  return out;
}

struct ExtensionData {
  CompatiblePair base;
  CompatibleRepresentation rep;
  PreCochain omega1, omega2;
};

inline ExtensionData parse_extension(const Json& j, const std::string& where = {}) {
  ExtensionData e;
  e.base = parse_pair(detail::field(j, "base", where), detail::join(where, "base"));
  e.rep = parse_compatible_rep(detail::field(j, "rep", where), e.base.dim(), detail::join(where, "rep"));
  e.omega1 = parse_cochain(detail::field(j, "omega1", where), detail::join(where, "omega1"));
  e.omega2 = parse_cochain(detail::field(j, "omega2", where), detail::join(where, "omega2"));
  for (const auto* w : {&e.omega1, &e.omega2})
    if (w->weight() != 1 || w->dim() != e.base.dim() || w->target_dim() != e.rep.module_dim())
      throw ParseError(where, "extension cocycles must have weight 1, ambient_dim = dim and target_dim = module_dim");
  return e;
}

inline Json extension_to_json(const ExtensionData& e) {
  return {{"base", pair_to_json(e.base)},
          {"rep", compatible_rep_to_json(e.rep)},
          {"omega1", cochain_to_json(e.omega1)},
          {"omega2", cochain_to_json(e.omega2)}};
}

inline Json classification_to_json(const ClassificationReport& r) {
  Json out = {{"isomorphic", r.isomorphic}};
  out["tau"] = r.tau ? to_json(*r.tau) : Json(nullptr);
  if (r.theta) out["theta"] = to_json(*r.theta);
  out["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
  return out;
}

}  // namespace trilie::io

#endif  // TRILIE_IO_HPP
