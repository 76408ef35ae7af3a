#ifndef TRILIE_TEST_ORACLES_HPP
#define TRILIE_TEST_ORACLES_HPP

// Naive reference computations shared by the unit and acceptance tests. They
// expand multilinear maps slot by slot and check identities on every basis
// tuple, without the symmetry reductions used by the library.

#include "trilie/extensions.hpp"
#include "trilie/generators.hpp"

namespace oracle {

using namespace trilie;

// Naive multilinear evaluation at arbitrary vectors, expanding every slot
// over the support of its argument.
inline Vector eval_naive(const PreCochain& c, const std::vector<Vector>& args) {
  Vector out(c.target_dim());
  std::vector<std::vector<Index>> support(args.size());
  for (std::size_t i = 0; i < args.size(); ++i) {
    for (Index s = 0; s < args[i].size(); ++s)
      if (args[i][s] != 0) support[i].push_back(s);
    if (support[i].empty()) return out;
  }
  std::vector<std::size_t> pos(args.size(), 0);
  std::vector<Index> idx(args.size());
  while (true) {
    Scalar coeff = 1;
    for (std::size_t i = 0; i < args.size(); ++i) {
      idx[i] = support[i][pos[i]];
      coeff *= args[i][idx[i]];
    }
    Vector v = c.eval(idx);
    for (std::size_t t = 0; t < out.size(); ++t) out[t] += coeff * v[t];
    std::size_t i = 0;
    while (i < pos.size() && ++pos[i] == support[i].size()) pos[i++] = 0;
    if (i == pos.size()) break;
  }
  return out;
}

inline Vector e(std::size_t d, Index i) {
  Vector v(d);
  v[i] = 1;
  return v;
}

inline Vector add(Vector a, const Vector& b, int sign = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += sign * b[i];
  return a;
}

// FI checked on every basis 5-tuple, no symmetry reductions.
inline bool fi_all_tuples(const PreCochain& pi) {
  const std::size_t d = pi.dim();
  auto br = [&](const Vector& x, const Vector& y, const Vector& z) { return eval_naive(pi, {x, y, z}); };
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b)
      for (Index c = 0; c < d; ++c)
        for (Index u = 0; u < d; ++u)
          for (Index v = 0; v < d; ++v) {
            Vector x1 = e(d, a), x2 = e(d, b), x3 = e(d, c), x4 = e(d, u), x5 = e(d, v);
            Vector lhs = br(x1, x2, br(x3, x4, x5));
            Vector rhs = add(add(br(br(x1, x2, x3), x4, x5), br(x3, br(x1, x2, x4), x5)), br(x3, x4, br(x1, x2, x5)));
            if (lhs != rhs) return false;
          }
  return true;
}

// Compatible iff π₁, π₂ and π₁+π₂ all satisfy FI (FI is quadratic in the bracket).
inline bool compatible_by_polarization(const CompatiblePair& p) {
  return fi_all_tuples(p.pi1) && fi_all_tuples(p.pi2) && fi_all_tuples(p.pi1 + p.pi2);
}

// Dimension of {D : D[x,y,z] = [Dx,y,z] + [x,Dy,z] + [x,y,Dz]} for all given brackets.
inline std::size_t derivation_dim_naive(const std::vector<PreCochain>& brackets, std::size_t d) {
  std::vector<Vector> rows;
  for (const auto& pi : brackets)
    for (Index a = 0; a < d; ++a)
      for (Index b = 0; b < d; ++b)
        for (Index c = 0; c < d; ++c)
          for (Index t = 0; t < d; ++t) {
            // unknown D(r, s) at column r*d + s
            Vector row(d * d);
            Vector abc = pi.eval(std::vector<Index>{a, b, c});
            for (Index s = 0; s < d; ++s) row[t * d + s] += abc[s];
            for (Index r = 0; r < d; ++r) {
              row[r * d + a] -= pi.eval(std::vector<Index>{r, b, c})[t];
              row[r * d + b] -= pi.eval(std::vector<Index>{a, r, c})[t];
              row[r * d + c] -= pi.eval(std::vector<Index>{a, b, r})[t];
            }
            rows.push_back(row);
          }
  return d * d - rank(Matrix::from_dense(rows, d * d));
}

// The coboundary of a V-valued cochain f of weight n−1, term by term from the
// explicit display; X_i = (args[2i], args[2i+1]), x_{n+1} = args.back().
inline Vector coboundary_display(const PreCochain& pi, const Representation& r, const PreCochain& f,
                          const std::vector<Index>& args) {
  const std::size_t d = pi.dim(), n = f.weight() + 1;
  auto x = [&](std::size_t i) { return e(d, args[2 * i]); };  // 0-based pair i
  auto y = [&](std::size_t i) { return e(d, args[2 * i + 1]); };
  const Vector last = e(d, args.back());
  auto br = [&](const Vector& a, const Vector& b, const Vector& c) { return eval_naive(pi, {a, b, c}); };
  auto sgn = [](std::size_t k) { return k % 2 ? -1 : 1; };
  Vector out(r.module_dim());
  auto acc = [&](const Vector& v, int s) { out = add(out, v, s); };
  // f with pairs `pairs` (given as vectors) and final argument
  auto fv = [&](const std::vector<std::pair<Vector, Vector>>& pairs, const Vector& z) {
    std::vector<Vector> a;
    for (const auto& [p, q] : pairs) {
      a.push_back(p);
      a.push_back(q);
    }
    a.push_back(z);
    return eval_naive(f, a);
  };
  auto without = [&](std::size_t j) {
    std::vector<std::pair<Vector, Vector>> p;
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) p.emplace_back(x(i), y(i));
    return p;
  };
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      for (int member = 0; member < 2; ++member) {
        std::vector<std::pair<Vector, Vector>> p;
        for (std::size_t i = 0; i < n; ++i) {
          if (i == j) continue;
          if (i == k)
            p.emplace_back(member == 0 ? br(x(j), y(j), x(k)) : x(k), member == 0 ? y(k) : br(x(j), y(j), y(k)));
          else
            p.emplace_back(x(i), y(i));
        }
        acc(fv(p, last), sgn(j + 1));
      }
    }
  for (std::size_t j = 0; j < n; ++j) acc(fv(without(j), br(x(j), y(j), last)), sgn(j + 1));
  for (std::size_t j = 0; j < n; ++j) acc(r.rho(x(j), y(j)) * fv(without(j), last), sgn(j));
  std::vector<std::pair<Vector, Vector>> head;
  for (std::size_t i = 0; i + 1 < n; ++i) head.emplace_back(x(i), y(i));
  acc(r.rho(y(n - 1), last) * fv(head, x(n - 1)), sgn(n + 1));
  acc(r.rho(last, x(n - 1)) * fv(head, y(n - 1)), sgn(n + 1));
  return out;
}

}  // namespace oracle

#endif  // TRILIE_TEST_ORACLES_HPP
