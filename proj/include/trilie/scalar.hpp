#ifndef TRILIE_SCALAR_HPP
#define TRILIE_SCALAR_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace trilie {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input. `where` names the offending field (e.g. "bracket[2].value.3").
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// Shapes or dimensions that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Two independent computations of the same quantity disagreed, or a
/// complex law (d∘d = 0) failed. Always signals a bug, never bad input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (e.g. degree above the bound).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Exact rational scalar, always kept in lowest terms with positive denominator.
using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }

inline bool is_zero(const Vector& v) {
  for (const auto& s : v)
    if (sgn(s) != 0) return false;
  return true;
}

namespace detail {

inline bool is_integer_literal(std::string_view s, bool allow_sign) {
  std::size_t i = 0;
  if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace detail

/// Parses "p" or "p/q". Rejects zero denominators, whitespace and signs on q.
inline Scalar parse_scalar(std::string_view text, const std::string& where = {}) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!detail::is_integer_literal(num, true) || !detail::is_integer_literal(den, false))
    throw ParseError(where, "malformed rational \"" + std::string(text) + "\"");
  std::string n(num.front() == '+' ? num.substr(1) : num);
  mpz_class p(n, 10), q(std::string(den), 10);
  if (q == 0) throw ParseError(where, "zero denominator in \"" + std::string(text) + "\"");
  Scalar r(p, q);
  r.canonicalize();
  return r;
}

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Scalar& s) {
  if (s.get_den() == 1) return s.get_num().get_str();
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

/// Sparse linear combination of coordinates. Used to push whole bases of
/// cochains through linear formulas in one pass.
struct LinearForm {
  std::vector<std::pair<std::uint32_t, Scalar>> terms;

  LinearForm() = default;
  LinearForm(std::uint32_t coord, Scalar c) { terms.emplace_back(coord, std::move(c)); }

  /// Sorts by coordinate, merges duplicates and drops zeros.
  void normalize();
  bool is_zero() const { return terms.empty(); }
  bool operator==(const LinearForm& o) const { return terms == o.terms; }
};

inline void LinearForm::normalize() {
  if (terms.size() < 2) {
    if (terms.size() == 1 && sgn(terms[0].second) == 0) terms.clear();
    return;
  }
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::uint32_t c = terms[i].first;
    Scalar acc = terms[i].second;
    std::size_t j = i + 1;
    for (; j < terms.size() && terms[j].first == c; ++j) acc += terms[j].second;
    if (sgn(acc) != 0) terms[out++] = {c, std::move(acc)};
    i = j;
  }
  terms.resize(out);
}

inline bool is_zero(const LinearForm& f) { return f.is_zero(); }

// acc += c * a * b for the coefficient combinations the engine produces.
inline void add_product(Scalar& acc, const Scalar& c, const Scalar& a, const Scalar& b) {
  acc += c * a * b;
}
inline void add_product(LinearForm& acc, const Scalar& c, const Scalar& a, const LinearForm& b) {
  Scalar f = c * a;
  for (const auto& [k, v] : b.terms) acc.terms.emplace_back(k, f * v);
}
inline void add_product(LinearForm& acc, const Scalar& c, const LinearForm& a, const Scalar& b) {
  add_product(acc, c, b, a);
}
inline void add_scaled(Scalar& acc, const Scalar& c, const Scalar& a) { acc += c * a; }
inline void add_scaled(LinearForm& acc, const Scalar& c, const LinearForm& a) {
  for (const auto& [k, v] : a.terms) acc.terms.emplace_back(k, c * v);
}

inline void finalize(Scalar&) {}
inline void finalize(LinearForm& f) { f.normalize(); }

template <class A, class B>
struct product_type {
  using type = LinearForm;
};
template <>
struct product_type<Scalar, Scalar> {
  using type = Scalar;
};
template <class A, class B>
using product_t = typename product_type<A, B>::type;

}  // namespace trilie

#endif  // TRILIE_SCALAR_HPP
