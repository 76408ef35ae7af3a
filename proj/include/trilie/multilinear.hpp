#ifndef TRILIE_MULTILINEAR_HPP
#define TRILIE_MULTILINEAR_HPP

// Cochains on wedge-pair slots and the graded (Nijenhuis–Richardson type)
// bracket built from the shuffle circle product.
//
// A pre-cochain of weight w is a multilinear map
//     (x1∧y1, ..., xw∧yw, x) ↦ value ∈ K^m
// skew within each pair. It is stored on canonical keys (every pair a < b,
// any final index), zero entries omitted. The admissible cochains are the
// pre-cochains that are in addition fully skew in the last three arguments
// (xw, yw, x); for w = 1 these are exactly Hom(∧³g, g).
//
// Basis indices are 0-based in code and 1-based in every file format.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "scalar.hpp"

namespace trilie {

using Index = std::uint32_t;
using Key = std::uint64_t;

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline std::size_t pair_count(std::size_t d) { return d * (d - 1) / 2; }

/// Lexicographic position of (a, b), a < b, among the pairs of {0..d-1}.
inline std::size_t pair_index(Index a, Index b, std::size_t d) {
  return a * (2 * d - a - 1) / 2 + (b - a - 1);
}

inline std::pair<Index, Index> pair_from_index(std::size_t idx, std::size_t d) {
  Index a = 0;
  while (idx >= d - 1 - a) {
    idx -= d - 1 - a;
    ++a;
  }
  return {a, static_cast<Index>(a + 1 + idx)};
}

/// Lexicographic position of (a, b, c), a < b < c.
inline std::size_t triple_index(Index a, Index b, Index c, std::size_t d) {
  std::size_t idx = 0;
  for (Index i = 0; i < a; ++i) idx += binomial(d - 1 - i, 2);
  for (Index j = a + 1; j < b; ++j) idx += d - 1 - j;
  return idx + (c - b - 1);
}

/// Number of canonical raw keys of a weight-w pre-cochain on a d-space.
inline std::size_t raw_key_count(std::size_t w, std::size_t d) {
  std::size_t n = d;
  for (std::size_t i = 0; i < w; ++i) n *= pair_count(d);
  return n;
}

/// Number of admissible coordinates per target component.
inline std::size_t admissible_key_count(std::size_t w, std::size_t d) {
  if (w == 0) return d;
  std::size_t n = binomial(d, 3);
  for (std::size_t i = 1; i < w; ++i) n *= pair_count(d);
  return n;
}

struct Canonical {
  Key key = 0;
  int sign = 0;  // 0 when the arguments repeat inside a pair
};

/// Sorts every pair (absorbing signs) and encodes the mixed-radix key.
inline Canonical canonicalize(const Index* args, std::size_t w, std::size_t d) {
  const Key radix = pair_count(d);
  Key key = 0;
  int sign = 1;
  for (std::size_t i = 0; i < w; ++i) {
    Index a = args[2 * i], b = args[2 * i + 1];
    if (a == b) return {};
    if (a > b) {
      std::swap(a, b);
      sign = -sign;
    }
    key = key * radix + pair_index(a, b, d);
  }
  return {key * d + args[2 * w], sign};
}

inline void decode_key(Key key, std::size_t w, std::size_t d, Index* out) {
  const Key radix = pair_count(d);
  out[2 * w] = static_cast<Index>(key % d);
  key /= d;
  for (std::size_t i = w; i-- > 0;) {
    auto [a, b] = pair_from_index(key % radix, d);
    out[2 * i] = a;
    out[2 * i + 1] = b;
    key /= radix;
  }
}

inline std::vector<Index> decode_key(Key key, std::size_t w, std::size_t d) {
  std::vector<Index> args(2 * w + 1);
  decode_key(key, w, d, args.data());
  return args;
}

/// Admissible coordinate of canonical raw arguments, with the sign needed to
/// sort the final triple. sign == 0 when the triple repeats an index.
struct AdmissibleCoord {
  std::size_t index = 0;
  int sign = 0;
};

inline AdmissibleCoord admissible_coord(const Index* args, std::size_t w, std::size_t d) {
  if (w == 0) return {args[0], 1};
  std::size_t prefix = 0;
  const std::size_t radix = pair_count(d);
  for (std::size_t i = 0; i + 1 < w; ++i) {
    Index a = args[2 * i], b = args[2 * i + 1];
    if (a == b) return {};
    prefix = prefix * radix + pair_index(std::min(a, b), std::max(a, b), d);
  }
  std::array<Index, 3> t = {args[2 * w - 2], args[2 * w - 1], args[2 * w]};
  int sign = 1;
  for (std::size_t i = 0; i + 1 < w; ++i)
    if (args[2 * i] > args[2 * i + 1]) sign = -sign;
  // three-element sort tracking parity
  for (int pass = 0; pass < 2; ++pass)
    for (int i = 0; i < 2; ++i)
      if (t[i] > t[i + 1]) {
        std::swap(t[i], t[i + 1]);
        sign = -sign;
      }
  if (t[0] == t[1] || t[1] == t[2]) return {};
  return {prefix * binomial(d, 3) + triple_index(t[0], t[1], t[2], d), sign};
}

/// Raw arguments of the admissible coordinate `index` (pairs sorted, triple sorted).
inline std::vector<Index> admissible_args(std::size_t index, std::size_t w, std::size_t d) {
  std::vector<Index> args(2 * w + 1);
  if (w == 0) {
    args[0] = static_cast<Index>(index);
    return args;
  }
  const std::size_t triples = binomial(d, 3);
  std::size_t tri = index % triples;
  std::size_t prefix = index / triples;
  const std::size_t radix = pair_count(d);
  for (std::size_t i = w - 1; i-- > 0;) {
    auto [a, b] = pair_from_index(prefix % radix, d);
    args[2 * i] = a;
    args[2 * i + 1] = b;
    prefix /= radix;
  }
  for (Index a = 0; a < d; ++a)
    for (Index b = a + 1; b < d; ++b)
      for (Index c = b + 1; c < d; ++c)
        if (tri-- == 0) {
          args[2 * w - 2] = a;
          args[2 * w - 1] = b;
          args[2 * w] = c;
          return args;
        }
  throw DimensionError("admissible index out of range");
}

/// A multilinear map stored on canonical keys.
template <class T>
class BasicPreCochain {
 public:
  using value_type = T;
  using Value = std::vector<T>;

  BasicPreCochain() = default;
  BasicPreCochain(std::size_t weight, std::size_t dim, std::size_t target_dim)
      : weight_(weight), dim_(dim), target_(target_dim) {}

  std::size_t weight() const { return weight_; }
  std::size_t dim() const { return dim_; }
  std::size_t target_dim() const { return target_; }
  std::size_t arity() const { return 2 * weight_ + 1; }

  const std::map<Key, Value>& entries() const { return values_; }
  bool is_zero() const { return values_.empty(); }

  const Value* find(Key key) const {
    auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
  }

  template <class F>
  void for_value(Key key, F&& f) const {
    if (auto* v = find(key)) f(*v);
  }

  /// Value at arbitrary basis arguments; skew-symmetry within pairs applied.
  Value eval(std::span<const Index> args) const {
    check_args(args);
    Value out(target_, T());
    Canonical c = canonicalize(args.data(), weight_, dim_);
    if (c.sign == 0) return out;
    if (auto* v = find(c.key)) {
      out = *v;
      if (c.sign < 0)
        for (auto& x : out) x = -x;
    }
    return out;
  }

  /// Stores `value` at `args` (sign absorbed into the canonical key).
  void set(std::span<const Index> args, Value value) {
    check_args(args);
    if (value.size() != target_) throw DimensionError("value length does not match target dimension");
    Canonical c = canonicalize(args.data(), weight_, dim_);
    if (c.sign == 0) {
      if (!trilie_all_zero(value)) throw DimensionError("nonzero value on a repeated pair");
      return;
    }
    if (c.sign < 0)
      for (auto& x : value) x = -x;
    set_key(c.key, std::move(value));
  }

  void add(std::span<const Index> args, const Value& value) {
    Value cur = eval(args);
    for (std::size_t t = 0; t < target_; ++t) cur[t] += value[t];
    set(args, std::move(cur));
  }

  /// Canonical-key store; drops all-zero values.
  void set_key(Key key, Value value) {
    if (trilie_all_zero(value))
      values_.erase(key);
    else
      values_[key] = std::move(value);
  }

  bool operator==(const BasicPreCochain& o) const {
    return weight_ == o.weight_ && dim_ == o.dim_ && target_ == o.target_ && values_ == o.values_;
  }

  BasicPreCochain& operator+=(const BasicPreCochain& o) { return axpy(Scalar(1), o); }
  BasicPreCochain& operator-=(const BasicPreCochain& o) { return axpy(Scalar(-1), o); }

  BasicPreCochain& axpy(const Scalar& c, const BasicPreCochain& o) {
    if (weight_ != o.weight_ || dim_ != o.dim_ || target_ != o.target_)
      throw DimensionError("cochain shapes differ");
    for (const auto& [k, v] : o.values_) {
      Value cur = values_.count(k) ? values_[k] : Value(target_, T());
      for (std::size_t t = 0; t < target_; ++t) add_scaled(cur[t], c, v[t]);
      for (auto& x : cur) finalize(x);
      set_key(k, std::move(cur));
    }
    return *this;
  }

  friend BasicPreCochain operator+(BasicPreCochain a, const BasicPreCochain& b) { return a += b; }
  friend BasicPreCochain operator-(BasicPreCochain a, const BasicPreCochain& b) { return a -= b; }
  friend BasicPreCochain operator*(const Scalar& c, const BasicPreCochain& a) {
    BasicPreCochain out(a.weight_, a.dim_, a.target_);
    return out.axpy(c, a);
  }

 private:
  static bool trilie_all_zero(const Value& v) {
    for (const auto& x : v)
      if (!trilie::is_zero(x)) return false;
    return true;
  }

  void check_args(std::span<const Index> args) const {
    if (args.size() != arity()) throw DimensionError("expected " + std::to_string(arity()) + " arguments");
    for (Index a : args)
      if (a >= dim_) throw DimensionError("basis index " + std::to_string(a + 1) + " out of range");
  }

  std::size_t weight_ = 0, dim_ = 0, target_ = 0;
  std::map<Key, Value> values_;
};

using PreCochain = BasicPreCochain<Scalar>;

/// Weight-0 cochain of a linear map: value at e_j is column j.
inline PreCochain endomorphism_cochain(const Matrix& m) {
  PreCochain c(0, m.cols(), m.rows());
  for (Index j = 0; j < m.cols(); ++j) {
    Index args[1] = {j};
    c.set(args, m.column(j));
  }
  return c;
}

/// Inverse of endomorphism_cochain.
inline Matrix cochain_matrix(const PreCochain& c) {
  if (c.weight() != 0) throw DimensionError("only weight-0 cochains are linear maps");
  Matrix m(c.target_dim(), c.dim());
  for (const auto& [k, v] : c.entries())
    for (std::size_t t = 0; t < v.size(); ++t) m.set(t, k, v[t]);
  return m;
}

/// Every coordinate functional of a cochain space at once: the value at a key
/// is the vector of unit forms of its coordinates. Feeding this through a
/// linear formula yields the matrix of that formula.
class GenericCochain {
 public:
  using value_type = LinearForm;

  GenericCochain(std::size_t weight, std::size_t dim, std::size_t target, bool admissible, std::uint32_t offset = 0)
      : weight_(weight), dim_(dim), target_(target), admissible_(admissible), offset_(offset) {}

  std::size_t weight() const { return weight_; }
  std::size_t dim() const { return dim_; }
  std::size_t target_dim() const { return target_; }
  bool admissible() const { return admissible_; }

  /// Number of coordinates (columns contributed).
  std::size_t size() const {
    return (admissible_ ? admissible_key_count(weight_, dim_) : raw_key_count(weight_, dim_)) * target_;
  }

  template <class F>
  void for_value(Key key, F&& f) const {
    std::size_t idx;
    int sign = 1;
    if (admissible_ && weight_ > 0) {
      Index args[2 * 8 + 1];
      decode_key(key, weight_, dim_, args);
      AdmissibleCoord c = admissible_coord(args, weight_, dim_);
      if (c.sign == 0) return;
      idx = c.index;
      sign = c.sign;
    } else {
      idx = key;
    }
    std::vector<LinearForm> v(target_);
    for (std::size_t t = 0; t < target_; ++t)
      v[t] = LinearForm(static_cast<std::uint32_t>(offset_ + idx * target_ + t), Scalar(sign));
    f(v);
  }

 private:
  std::size_t weight_, dim_, target_;
  bool admissible_;
  std::uint32_t offset_;
};

/// Sign-carrying shuffle of {0..a+b-1}: perm increasing on [0,a) and [a,a+b).
struct Shuffle {
  std::vector<Index> perm;
  int sign = 1;
};

/// All (a, b)-shuffles in lexicographic order of the first block.
inline const std::vector<Shuffle>& shuffles(std::size_t a, std::size_t b) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>, std::vector<Shuffle>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({a, b});
  if (it != cache.end()) return it->second;
  std::vector<Shuffle> out;
  const std::size_t n = a + b;
  std::vector<bool> first(n, false);
  std::fill(first.begin(), first.begin() + static_cast<std::ptrdiff_t>(a), true);
  // enumerate subsets of size a in lexicographic order via prev_permutation of the mask
  do {
    Shuffle s;
    for (Index i = 0; i < n; ++i)
      if (first[i]) s.perm.push_back(i);
    for (Index i = 0; i < n; ++i)
      if (!first[i]) s.perm.push_back(i);
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (s.perm[i] > s.perm[j]) ++inv;
    s.sign = inv % 2 ? -1 : 1;
    out.push_back(std::move(s));
  } while (std::prev_permutation(first.begin(), first.end()));
  return cache.emplace(std::pair{a, b}, std::move(out)).first->second;
}

namespace detail {

constexpr std::size_t kMaxArity = 2 * 8 + 1;

template <class Map, class F>
void visit(const Map& m, const Index* args, F&& f) {
  Canonical c = canonicalize(args, m.weight(), m.dim());
  if (c.sign == 0) return;
  m.for_value(c.key, [&](const auto& v) { f(c.sign, v); });
}

inline int parity_sign(std::size_t n) { return n % 2 ? -1 : 1; }

}  // namespace detail

/// out += coeff · (P∘Q)(X1, ..., X_{p+q}, x) at basis arguments `x`.
///
/// The three shuffle sums: Q substituted into the first member of pair
/// k+q, into the second member, and Q's output fed into P's final slot.
template <class PMap, class QMap, class R>
void circ_accumulate(const PMap& P, const QMap& Q, const Index* x, const Scalar& coeff, std::vector<R>& out) {
  const std::size_t p = P.weight(), q = Q.weight(), n = p + q, d = P.dim();
  Index pargs[detail::kMaxArity], qargs[detail::kMaxArity];
  auto pair_of = [&](std::size_t j) { return std::pair<Index, Index>{x[2 * j], x[2 * j + 1]}; };  // 0-based X_{j+1}

  for (std::size_t k = 1; k <= p; ++k) {
    const Scalar pref = coeff * detail::parity_sign((k - 1) * q);
    for (const Shuffle& s : shuffles(k - 1, q)) {
      const Scalar c = pref * s.sign;
      for (std::size_t t = 0; t < q; ++t) {
        auto [a, b] = pair_of(s.perm[k - 1 + t]);
        qargs[2 * t] = a;
        qargs[2 * t + 1] = b;
      }
      for (std::size_t i = 0; i + 1 < k; ++i) {
        auto [a, b] = pair_of(s.perm[i]);
        pargs[2 * i] = a;
        pargs[2 * i + 1] = b;
      }
      for (std::size_t j = k; j < p; ++j) {
        auto [a, b] = pair_of(q + j);
        pargs[2 * j] = a;
        pargs[2 * j + 1] = b;
      }
      pargs[2 * p] = x[2 * n];
      auto [xk, yk] = pair_of(k + q - 1);
      for (int member = 0; member < 2; ++member) {
        qargs[2 * q] = member == 0 ? xk : yk;
        const std::size_t slot = 2 * (k - 1) + member;
        pargs[2 * (k - 1) + (1 - member)] = member == 0 ? yk : xk;
        detail::visit(Q, qargs, [&](int qs, const auto& qv) {
          for (Index i = 0; i < d; ++i) {
            if (is_zero(qv[i])) continue;
            pargs[slot] = i;
            detail::visit(P, pargs, [&](int ps, const auto& pv) {
              const Scalar cc = c * (qs * ps);
              for (std::size_t t = 0; t < pv.size(); ++t) add_product(out[t], cc, qv[i], pv[t]);
            });
          }
        });
      }
    }
  }

  const Scalar pref = coeff * detail::parity_sign(p * q);
  for (const Shuffle& s : shuffles(p, q)) {
    const Scalar c = pref * s.sign;
    for (std::size_t i = 0; i < p; ++i) {
      auto [a, b] = pair_of(s.perm[i]);
      pargs[2 * i] = a;
      pargs[2 * i + 1] = b;
    }
    for (std::size_t t = 0; t < q; ++t) {
      auto [a, b] = pair_of(s.perm[p + t]);
      qargs[2 * t] = a;
      qargs[2 * t + 1] = b;
    }
    qargs[2 * q] = x[2 * n];
    detail::visit(Q, qargs, [&](int qs, const auto& qv) {
      for (Index i = 0; i < d; ++i) {
        if (is_zero(qv[i])) continue;
        pargs[2 * p] = i;
        detail::visit(P, pargs, [&](int ps, const auto& pv) {
          const Scalar cc = c * (qs * ps);
          for (std::size_t t = 0; t < pv.size(); ++t) add_product(out[t], cc, qv[i], pv[t]);
        });
      }
    });
  }
}

/// out += coeff · [P, Q](x) with [P,Q] = P∘Q − (−1)^{pq} Q∘P.
template <class PMap, class QMap, class R>
void bracket_accumulate(const PMap& P, const QMap& Q, const Index* x, const Scalar& coeff, std::vector<R>& out) {
  circ_accumulate(P, Q, x, coeff, out);
  circ_accumulate(Q, P, x, -coeff * detail::parity_sign(P.weight() * Q.weight()), out);
}

namespace detail {

template <class PMap, class QMap>
void check_composable(const PMap& P, const QMap& Q) {
  if (P.dim() != Q.dim()) throw DimensionError("cochains live on spaces of different dimension");
  if (P.target_dim() != P.dim() || Q.target_dim() != Q.dim())
    throw DimensionError("graded bracket needs self-coefficient cochains (target = ambient)");
  if (2 * (P.weight() + Q.weight()) + 1 > kMaxArity) throw DimensionError("weight too large");
}

/// Runs `body(begin, end)` over [0, n) split into contiguous chunks.
template <class F>
void parallel_chunks(std::size_t n, unsigned threads, F&& body) {
  if (threads <= 1 || n < 64) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t b = t * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&body, b, e] { body(b, e); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

/// Number of worker threads used by the heavy loops (1 = sequential).
/// Results never depend on this value.
inline unsigned& thread_count() {
  static unsigned n = 1;
  return n;
}

template <class PMap, class QMap, class Combine>
auto evaluate_all_keys(const PMap& P, const QMap& Q, std::size_t weight, Combine&& combine) {
  using R = product_t<typename PMap::value_type, typename QMap::value_type>;
  const std::size_t d = P.dim();
  const std::size_t nkeys = raw_key_count(weight, d);
  std::vector<std::vector<R>> results(nkeys);
  detail::parallel_chunks(nkeys, thread_count(), [&](std::size_t b, std::size_t e) {
    Index x[detail::kMaxArity];
    for (std::size_t key = b; key < e; ++key) {
      decode_key(key, weight, d, x);
      std::vector<R> out(d, R());
      combine(x, out);
      for (auto& o : out) finalize(o);
      results[key] = std::move(out);
    }
  });
  BasicPreCochain<R> c(weight, d, d);
  for (std::size_t key = 0; key < nkeys; ++key) c.set_key(key, std::move(results[key]));
  return c;
}

/// Circle product P∘Q, evaluated on every canonical key.
template <class PMap, class QMap>
auto circ(const PMap& P, const QMap& Q) {
  detail::check_composable(P, Q);
  return evaluate_all_keys(P, Q, P.weight() + Q.weight(),
                           [&](const Index* x, auto& out) { circ_accumulate(P, Q, x, Scalar(1), out); });
}

/// Graded commutator [P, Q] = P∘Q − (−1)^{pq} Q∘P.
template <class PMap, class QMap>
auto nr_bracket(const PMap& P, const QMap& Q) {
  detail::check_composable(P, Q);
  return evaluate_all_keys(P, Q, P.weight() + Q.weight(),
                           [&](const Index* x, auto& out) { bracket_accumulate(P, Q, x, Scalar(1), out); });
}

/// Result of an admissibility test; `violation` holds the first argument
/// tuple where a permutation of the last three arguments breaks skewness.
struct AdmissibilityReport {
  bool admissible = true;
  std::vector<Index> violation;
};

template <class T>
AdmissibilityReport is_admissible(const BasicPreCochain<T>& c) {
  if (c.weight() == 0) return {};
  const std::size_t w = c.weight();
  static const std::array<std::array<int, 3>, 6> perms = {{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}}};
  static const std::array<int, 6> signs = {1, -1, -1, -1, 1, 1};
  for (const auto& [key, value] : c.entries()) {
    std::vector<Index> args = decode_key(key, w, c.dim());
    std::array<Index, 3> tail = {args[2 * w - 2], args[2 * w - 1], args[2 * w]};
    for (std::size_t p = 1; p < perms.size(); ++p) {
      std::vector<Index> permuted = args;
      for (int i = 0; i < 3; ++i) permuted[2 * w - 2 + i] = tail[perms[p][i]];
      auto v = c.eval(permuted);
      bool ok = true;
      for (std::size_t t = 0; t < value.size(); ++t) {
        auto expected = value[t];
        if (signs[p] < 0) expected = -expected;
        if (!(v[t] == expected)) ok = false;
      }
      if (!ok) return {false, args};
    }
  }
  return {};
}

/// Sets the admissible cochain's value on (prefix pairs, triple) and on every
/// permutation of the triple, so the result stays fully skew.
inline void set_admissible(PreCochain& c, std::span<const Index> args, const Vector& value) {
  const std::size_t w = c.weight();
  if (w == 0) {
    c.set(args, value);
    return;
  }
  std::vector<Index> a(args.begin(), args.end());
  const Index x = a[2 * w - 2], y = a[2 * w - 1], z = a[2 * w];
  Vector neg = value;
  for (auto& s : neg) s = -s;
  auto put = [&](Index p, Index q, Index r, const Vector& v) {
    a[2 * w - 2] = p;
    a[2 * w - 1] = q;
    a[2 * w] = r;
    c.set(a, v);
  };
  put(x, y, z, value);
  put(y, z, x, value);
  put(z, x, y, value);
}

/// Deterministic basis of the admissible cochains: ordered by
/// (pair tuples, triple, target index).
inline std::vector<PreCochain> admissible_basis(std::size_t w, std::size_t d, std::size_t m) {
  std::vector<PreCochain> basis;
  const std::size_t keys = admissible_key_count(w, d);
  for (std::size_t i = 0; i < keys; ++i) {
    auto args = admissible_args(i, w, d);
    for (std::size_t t = 0; t < m; ++t) {
      PreCochain c(w, d, m);
      Vector v(m);
      v[t] = 1;
      set_admissible(c, args, v);
      basis.push_back(std::move(c));
    }
  }
  return basis;
}

/// Coordinates of a cochain in the admissible basis (or the raw basis).
inline Vector cochain_coordinates(const PreCochain& c, bool admissible) {
  const std::size_t w = c.weight(), d = c.dim(), m = c.target_dim();
  if (!admissible || w == 0) {
    Vector out(raw_key_count(w, d) * m);
    for (const auto& [k, v] : c.entries())
      for (std::size_t t = 0; t < m; ++t) out[k * m + t] = v[t];
    return out;
  }
  const std::size_t keys = admissible_key_count(w, d);
  Vector out(keys * m);
  for (std::size_t i = 0; i < keys; ++i) {
    auto v = c.eval(admissible_args(i, w, d));
    for (std::size_t t = 0; t < m; ++t) out[i * m + t] = v[t];
  }
  return out;
}

/// Inverse of cochain_coordinates.
inline PreCochain cochain_from_coordinates(const Vector& coords, std::size_t w, std::size_t d, std::size_t m,
                                           bool admissible) {
  PreCochain c(w, d, m);
  if (!admissible || w == 0) {
    if (coords.size() != raw_key_count(w, d) * m) throw DimensionError("coordinate vector has wrong length");
    for (std::size_t k = 0; k < raw_key_count(w, d); ++k)
      c.set_key(k, Vector(coords.begin() + k * m, coords.begin() + (k + 1) * m));
    return c;
  }
  const std::size_t keys = admissible_key_count(w, d);
  if (coords.size() != keys * m) throw DimensionError("coordinate vector has wrong length");
  for (std::size_t i = 0; i < keys; ++i) {
    Vector v(coords.begin() + i * m, coords.begin() + (i + 1) * m);
    if (!is_zero(v)) set_admissible(c, admissible_args(i, w, d), v);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Split spaces g ⊕ V: lifts and bidegrees.

/// A space g ⊕ V with basis e_0..e_{g-1} of g followed by the basis of V.
struct Split {
  std::size_t g_dim = 0;
  std::size_t v_dim = 0;
  std::size_t total() const { return g_dim + v_dim; }
};

/// Lift of a bracket π on g: π̂((x,u),(y,v),(z,w)) = (π(x,y,z), 0).
inline PreCochain lift_bracket(const PreCochain& pi, std::size_t v_dim) {
  if (pi.weight() != 1 || pi.target_dim() != pi.dim())
    throw DimensionError("lift_bracket expects a weight-1 self-coefficient cochain");
  const std::size_t D = pi.dim() + v_dim;
  PreCochain out(1, D, D);
  for (const auto& [key, v] : pi.entries()) {
    auto args = decode_key(key, 1, pi.dim());
    Vector big(D);
    std::copy(v.begin(), v.end(), big.begin());
    out.set(args, big);
  }
  return out;
}

/// Lift of a V-valued cochain f on g: nonzero only when every argument lies in g,
/// with values in V.
inline PreCochain lift_cochain(const PreCochain& f, std::size_t g_dim) {
  if (f.dim() != g_dim) throw DimensionError("cochain domain does not match the declared g dimension");
  const std::size_t D = g_dim + f.target_dim();
  PreCochain out(f.weight(), D, D);
  for (const auto& [key, v] : f.entries()) {
    auto args = decode_key(key, f.weight(), g_dim);
    Vector big(D);
    std::copy(v.begin(), v.end(), big.begin() + static_cast<std::ptrdiff_t>(g_dim));
    out.set(args, big);
  }
  return out;
}

/// Lazy lift of any (possibly generic) V-valued map on g to g ⊕ V.
template <class Map>
class LiftedMap {
 public:
  using value_type = typename Map::value_type;

  LiftedMap(const Map& f, std::size_t g_dim) : f_(f), g_(g_dim), D_(g_dim + f.target_dim()) {
    if (f.dim() != g_dim) throw DimensionError("cochain domain does not match the declared g dimension");
  }

  std::size_t weight() const { return f_.weight(); }
  std::size_t dim() const { return D_; }
  std::size_t target_dim() const { return D_; }

  template <class F>
  void for_value(Key key, F&& f) const {
    Index args[detail::kMaxArity];
    const std::size_t w = f_.weight();
    decode_key(key, w, D_, args);
    for (std::size_t i = 0; i <= 2 * w; ++i)
      if (args[i] >= g_) return;
    Canonical c = canonicalize(args, w, g_);
    f_.for_value(c.key, [&](const auto& v) {
      std::vector<value_type> big(D_);
      for (std::size_t t = 0; t < v.size(); ++t) big[g_ + t] = v[t];
      f(big);
    });
  }

 private:
  const Map& f_;
  std::size_t g_, D_;
};

struct Bidegree {
  int l = 0;
  int k = 0;
  bool operator==(const Bidegree&) const = default;
};

/// Whether every nonzero value of `c` obeys the l|k rules on the split space:
/// inputs with l+1 arguments from g and k from V map into g, inputs with l from g
/// and k+1 from V map into V, everything else maps to zero. The zero map has
/// every bidegree.
inline bool has_bidegree(const PreCochain& c, const Split& s, int l, int k) {
  if (c.dim() != s.total() || c.target_dim() != s.total()) throw DimensionError("cochain does not live on the split space");
  if (l + k != static_cast<int>(2 * c.weight())) return false;
  for (const auto& [key, v] : c.entries()) {
    auto args = decode_key(key, c.weight(), c.dim());
    int from_g = 0;
    for (Index a : args)
      if (a < s.g_dim) ++from_g;
    const int from_v = static_cast<int>(args.size()) - from_g;
    for (std::size_t t = 0; t < v.size(); ++t) {
      if (is_zero(v[t])) continue;
      const bool into_g = t < s.g_dim;
      if (into_g && !(from_g == l + 1 && from_v == k)) return false;
      if (!into_g && !(from_g == l && from_v == k + 1)) return false;
    }
  }
  return true;
}

/// The bidegree of a nonzero homogeneous cochain; nullopt when `c` is not
/// homogeneous or is zero (the zero map has every bidegree; see has_bidegree).
inline std::optional<Bidegree> bidegree(const PreCochain& c, const Split& s) {
  if (c.dim() != s.total() || c.target_dim() != s.total()) throw DimensionError("cochain does not live on the split space");
  std::optional<Bidegree> found;
  for (const auto& [key, v] : c.entries()) {
    auto args = decode_key(key, c.weight(), c.dim());
    int from_g = 0;
    for (Index a : args)
      if (a < s.g_dim) ++from_g;
    const int from_v = static_cast<int>(args.size()) - from_g;
    for (std::size_t t = 0; t < v.size(); ++t) {
      if (is_zero(v[t])) continue;
      Bidegree b = t < s.g_dim ? Bidegree{from_g - 1, from_v} : Bidegree{from_g, from_v - 1};
      if (found && !(*found == b)) return std::nullopt;
      found = b;
    }
  }
  return found;
}

}  // namespace trilie

#endif  // TRILIE_MULTILINEAR_HPP
