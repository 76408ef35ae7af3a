#ifndef TRILIE_GENERATORS_HPP
#define TRILIE_GENERATORS_HPP

// Seeded generators for test inputs: brackets, pairs, cochains, operators.

#include <cstdint>
#include <random>
#include <vector>

#include "compatible.hpp"

namespace trilie::gen {

using Rng = std::mt19937_64;

/// Small rational p/q with p ∈ [−3, 3], q ∈ {1, 2, 3}.
inline Scalar small_rational(Rng& rng, bool nonzero = false) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  int p = 0;
  do p = num(rng);
  while (nonzero && p == 0);
  Scalar s(p, den(rng));
  s.canonicalize();
  return s;
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// The 4-dimensional pair [e1,e2,e3] = e1, {e2,e3,e4} = e1.
inline CompatiblePair sample_pair() {
  PreCochain p1(1, 4, 4), p2(1, 4, 4);
  Vector e1(4);
  e1[0] = 1;
  set_admissible(p1, std::vector<Index>{0, 1, 2}, e1);
  set_admissible(p2, std::vector<Index>{1, 2, 3}, e1);
  return CompatiblePair(p1, p2);
}

/// [e1,e2,e3] = e1 and [e1,e2,e4] = e2 on a 4-dimensional space; fails FI.
inline PreCochain fi_violating_bracket() {
  PreCochain p(1, 4, 4);
  Vector e1(4), e2(4);
  e1[0] = 1;
  e2[1] = 1;
  set_admissible(p, std::vector<Index>{0, 1, 2}, e1);
  set_admissible(p, std::vector<Index>{0, 1, 3}, e2);
  return p;
}

/// Skew trilinear map with each triple component nonzero with probability `density`.
inline PreCochain random_skew_bracket(std::size_t d, Rng& rng, double density = 0.3) {
  PreCochain p(1, d, d);
  for (Index a = 0; a < d; ++a)
    for (Index b = a + 1; b < d; ++b)
      for (Index c = b + 1; c < d; ++c) {
        Vector v(d);
        for (auto& x : v)
          if (coin(rng, density)) x = small_rational(rng, true);
        if (!is_zero(v)) set_admissible(p, std::vector<Index>{a, b, c}, v);
      }
  return p;
}

/// Pre-cochain with random values on a random subset of canonical keys.
inline PreCochain random_precochain(std::size_t w, std::size_t d, std::size_t m, Rng& rng, double density = 0.4) {
  PreCochain c(w, d, m);
  for (Key k = 0; k < raw_key_count(w, d); ++k) {
    if (!coin(rng, density)) continue;
    Vector v(m);
    for (auto& x : v) x = small_rational(rng);
    c.set_key(k, std::move(v));
  }
  return c;
}

/// Random admissible cochain of weight w with values in an m-dimensional space.
inline PreCochain random_cochain(std::size_t w, std::size_t d, std::size_t m, Rng& rng, double density = 0.5) {
  Vector coords(admissible_key_count(w, d) * m);
  for (auto& x : coords)
    if (coin(rng, density)) x = small_rational(rng);
  return cochain_from_coordinates(coords, w, d, m, true);
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng, double density = 0.5) {
  std::vector<Vector> data(rows, Vector(cols));
  for (auto& row : data)
    for (auto& x : row)
      if (coin(rng, density)) x = small_rational(rng);
  return Matrix::from_dense(data, cols);
}

/// On a 4-dimensional space, x,y,z ↦ B(x × y × z) with B symmetric is a 3-Lie
/// bracket (× the ternary cross product); on a 3-dimensional space every skew
/// bracket is one. Two such brackets form a compatible pair.
inline PreCochain random_three_lie(std::size_t d, Rng& rng) {
  if (d == 3) {
    PreCochain p(1, 3, 3);
    Vector v(3);
    for (auto& x : v) x = small_rational(rng);
    set_admissible(p, std::vector<Index>{0, 1, 2}, v);
    return p;
  }
  if (d != 4) throw PreconditionError("random 3-Lie brackets are generated for d = 3 or 4");
  Matrix B(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j)
      if (coin(rng, 0.5)) {
        Scalar s = small_rational(rng);
        B.set(i, j, s);
        B.set(j, i, s);
      }
  // e_a × e_b × e_c = ε(a,b,c,l) e_l for the missing index l.
  PreCochain p(1, 4, 4);
  for (Index a = 0; a < 4; ++a)
    for (Index b = a + 1; b < 4; ++b)
      for (Index c = b + 1; c < 4; ++c) {
        const Index l = 6 - a - b - c;
        const int sign = (l == 3 || l == 1) ? 1 : -1;  // parity of (a,b,c,l)
        Vector v = B.column(l);
        if (sign < 0)
          for (auto& x : v) x = -x;
        if (!is_zero(v)) set_admissible(p, std::vector<Index>{a, b, c}, v);
      }
  return p;
}

inline CompatiblePair random_compatible_pair(std::size_t d, Rng& rng) {
  return CompatiblePair(random_three_lie(d, rng), random_three_lie(d, rng));
}

/// Restriction of the adjoint pair to span(e_1, …, e_m) when that span
/// contains both brackets' images.
inline CompatibleRepresentation sub_adjoint(const CompatiblePair& p, std::size_t m) {
  std::vector<Index> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = static_cast<Index>(i);
  const auto ad = CompatibleRepresentation::adjoint(p);
  return {restrict_representation(ad.rho, basis), restrict_representation(ad.mu, basis)};
}

/// Searches λ·Id + E, with E having one or two small integer entries, for
/// operators that are Nijenhuis for both brackets and not scalar.
inline std::vector<Matrix> find_nijenhuis(const CompatiblePair& p, std::size_t count, std::uint64_t seed,
                                          std::size_t max_tries = 4000) {
  Rng rng(seed);
  const std::size_t d = p.dim();
  std::uniform_int_distribution<int> pos(0, static_cast<int>(d) - 1), val(-2, 2), lam(-1, 2), terms(1, 2);
  std::vector<Matrix> out;
  for (std::size_t tries = 0; tries < max_tries && out.size() < count; ++tries) {
    Matrix n = Scalar(lam(rng)) * Matrix::identity(d);
    const int k = terms(rng);
    for (int t = 0; t < k; ++t) {
      const int i = pos(rng), j = pos(rng);
      n.set(i, j, n.get(i, j) + val(rng));
    }
    bool scalar = true;
    for (std::size_t i = 0; i < d && scalar; ++i)
      for (std::size_t j = 0; j < d && scalar; ++j)
        if (n.get(i, j) != (i == j ? n.get(0, 0) : Scalar(0))) scalar = false;
    if (scalar) continue;
    bool dup = false;
    for (const auto& m : out) dup = dup || m == n;
    if (dup) continue;
    if (is_nijenhuis(p.pi1, n) && is_nijenhuis(p.pi2, n)) out.push_back(std::move(n));
  }
  return out;
}

}  // namespace trilie::gen

#endif  // TRILIE_GENERATORS_HPP
