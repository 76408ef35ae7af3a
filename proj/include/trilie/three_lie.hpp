#ifndef TRILIE_THREE_LIE_HPP
#define TRILIE_THREE_LIE_HPP

// Single 3-Lie algebras: the Fundamental Identity, derivations,
// representations, semidirect products, coboundary operators with
// coefficients and Nijenhuis operators.

#include <array>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "multilinear.hpp"
#include "scalar.hpp"

namespace trilie {

/// Value of a multilinear pre-cochain on arbitrary vector arguments.
inline Vector eval_vectors(const PreCochain& c, const std::vector<Vector>& args) {
  if (args.size() != c.arity()) throw DimensionError("wrong number of arguments");
  Vector out(c.target_dim());
  std::vector<Index> idx(args.size());
  // Recursive expansion over the nonzero coordinates of each argument.
  auto rec = [&](auto&& self, std::size_t pos, const Scalar& coeff) -> void {
    if (pos == args.size()) {
      auto v = c.eval(idx);
      for (std::size_t t = 0; t < out.size(); ++t)
        if (!is_zero(v[t])) out[t] += coeff * v[t];
      return;
    }
    for (Index i = 0; i < args[pos].size(); ++i) {
      if (is_zero(args[pos][i])) continue;
      idx[pos] = i;
      self(self, pos + 1, coeff * args[pos][i]);
    }
  };
  rec(rec, 0, Scalar(1));
  return out;
}

inline Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1;
  return v;
}

/// Weight-1 pre-cochain (skew in its first two arguments) whose value at
/// basis arguments (a, b, c) is f(a, b, c).
template <class F>
PreCochain trilinear_from(std::size_t d, std::size_t m, F&& f) {
  PreCochain out(1, d, m);
  for (Index a = 0; a < d; ++a)
    for (Index b = a + 1; b < d; ++b)
      for (Index c = 0; c < d; ++c) {
        Index args[3] = {a, b, c};
        out.set(args, f(a, b, c));
      }
  return out;
}

/// A skew trilinear bracket given by structure constants.
class ThreeLieAlgebra {
 public:
  ThreeLieAlgebra() = default;
  explicit ThreeLieAlgebra(PreCochain pi) : pi_(std::move(pi)) {
    if (pi_.weight() != 1 || pi_.target_dim() != pi_.dim())
      throw DimensionError("a bracket is a weight-1 cochain with values in the algebra");
    auto adm = is_admissible(pi_);
    if (!adm.admissible) throw DimensionError("bracket is not skew-symmetric in all three arguments");
  }

  static ThreeLieAlgebra abelian(std::size_t d) { return ThreeLieAlgebra(PreCochain(1, d, d)); }

  std::size_t dim() const { return pi_.dim(); }
  const PreCochain& structure() const { return pi_; }

  Vector bracket(Index a, Index b, Index c) const {
    Index args[3] = {a, b, c};
    return pi_.eval(args);
  }
  Vector bracket(const Vector& x, const Vector& y, const Vector& z) const { return eval_vectors(pi_, {x, y, z}); }

  bool operator==(const ThreeLieAlgebra& o) const { return pi_ == o.pi_; }

 private:
  PreCochain pi_;
};

// ---------------------------------------------------------------------------
// Fundamental Identity

struct FiViolation {
  std::array<Index, 5> args;  // 0-based basis indices x1..x5
  Vector lhs, rhs;
};

struct FiReport {
  bool holds = true;
  std::vector<FiViolation> violations;
};

/// [x1,x2,[x3,x4,x5]] = [[x1,x2,x3],x4,x5] + [x3,[x1,x2,x4],x5] + [x3,x4,[x1,x2,x5]]
/// over basis tuples with x1 < x2 and x3 < x4 < x5. Both sides are skew in
/// (x1,x2) and in (x3,x4,x5), so these tuples cover every case.
inline FiReport validate_fi(const PreCochain& pi) {
  const std::size_t d = pi.dim();
  FiReport report;
  auto br = [&](const Vector& x, const Vector& y, const Vector& z) { return eval_vectors(pi, {x, y, z}); };
  for (Index x1 = 0; x1 < d; ++x1)
    for (Index x2 = x1 + 1; x2 < d; ++x2)
      for (Index x3 = 0; x3 < d; ++x3)
        for (Index x4 = x3 + 1; x4 < d; ++x4)
          for (Index x5 = x4 + 1; x5 < d; ++x5) {
            Vector e1 = unit_vector(d, x1), e2 = unit_vector(d, x2), e3 = unit_vector(d, x3), e4 = unit_vector(d, x4),
                   e5 = unit_vector(d, x5);
            Vector lhs = br(e1, e2, br(e3, e4, e5));
            Vector rhs = br(br(e1, e2, e3), e4, e5);
            Vector t2 = br(e3, br(e1, e2, e4), e5);
            Vector t3 = br(e3, e4, br(e1, e2, e5));
            for (std::size_t i = 0; i < d; ++i) rhs[i] += t2[i] + t3[i];
            if (lhs != rhs) {
              report.holds = false;
              report.violations.push_back({{x1, x2, x3, x4, x5}, std::move(lhs), std::move(rhs)});
            }
          }
  return report;
}

inline FiReport validate_fi(const ThreeLieAlgebra& a) { return validate_fi(a.structure()); }

/// The Maurer–Cartan form of the Fundamental Identity: [π, π] = 0.
inline bool validate_fi_via_mc(const PreCochain& pi) { return nr_bracket(pi, pi).is_zero(); }
inline bool validate_fi_via_mc(const ThreeLieAlgebra& a) { return validate_fi_via_mc(a.structure()); }

/// Linear conditions f[x,y,z] = [fx,y,z] + [x,fy,z] + [x,y,fz] over basis
/// triples a<b<c, written directly from the structure constants. Unknown f_{ts}
/// sits in column s·d + t (the weight-0 cochain coordinate of f at e_s, component t).
inline Matrix derivation_system(const std::vector<const PreCochain*>& brackets, std::size_t d) {
  std::vector<SparseVec> rows;
  for (const PreCochain* pi : brackets)
    for (Index a = 0; a < d; ++a)
      for (Index b = a + 1; b < d; ++b)
        for (Index c = b + 1; c < d; ++c) {
          const std::array<Index, 3> abc = {a, b, c};
          const Vector v = pi->eval(abc);
          for (Index t = 0; t < d; ++t) {
            Vector row(d * d);
            for (Index i = 0; i < d; ++i) row[i * d + t] += v[i];  // (f v)_t
            for (int slot = 0; slot < 3; ++slot)
              for (Index s = 0; s < d; ++s) {
                std::array<Index, 3> args = abc;
                args[slot] = s;
                const Vector w = pi->eval(args);
                // f e_{abc[slot]} = Σ_s f_{s,abc[slot]} e_s
                row[abc[slot] * d + s] -= w[t];
              }
            rows.push_back(detail::to_sparse(row));
          }
        }
  return Matrix::from_rows(d * d, std::move(rows));
}

inline Matrix coordinates_to_matrix(const Vector& v, std::size_t d) {
  Matrix m(d, d);
  for (std::size_t s = 0; s < d; ++s)
    for (std::size_t t = 0; t < d; ++t) m.set(t, s, v[s * d + t]);
  return m;
}

inline std::vector<Matrix> derivation_space(const ThreeLieAlgebra& a) {
  std::vector<Matrix> out;
  for (const auto& v : kernel_basis(derivation_system({&a.structure()}, a.dim())))
    out.push_back(coordinates_to_matrix(v, a.dim()));
  return out;
}

// ---------------------------------------------------------------------------
// Representations

/// Skew map ∧²g → End(V), stored on canonical pairs.
class Representation {
 public:
  Representation() = default;
  Representation(std::size_t g_dim, std::size_t module_dim)
      : g_dim_(g_dim), m_(module_dim), rho_(pair_count(g_dim), Matrix(module_dim, module_dim)) {}

  std::size_t g_dim() const { return g_dim_; }
  std::size_t module_dim() const { return m_; }

  /// ρ(e_a, e_b); ρ(e_b, e_a) = −ρ(e_a, e_b), ρ(e_a, e_a) = 0.
  Matrix rho(Index a, Index b) const {
    check(a, b);
    if (a == b) return Matrix(m_, m_);
    if (a < b) return rho_[pair_index(a, b, g_dim_)];
    return Scalar(-1) * rho_[pair_index(b, a, g_dim_)];
  }

  const Matrix& canonical(Index a, Index b) const { return rho_[pair_index(a, b, g_dim_)]; }

  /// Entry (t, s) of ρ(e_a, e_b) without copying.
  Scalar entry(Index a, Index b, Index t, Index s) const {
    if (a == b) return Scalar(0);
    if (a < b) return rho_[pair_index(a, b, g_dim_)].get(t, s);
    return -rho_[pair_index(b, a, g_dim_)].get(t, s);
  }

  void set(Index a, Index b, Matrix m) {
    check(a, b);
    if (a == b) throw DimensionError("a representation is skew: ρ(x,x) = 0");
    if (m.rows() != m_ || m.cols() != m_) throw DimensionError("representation matrix has wrong shape");
    if (a > b) {
      std::swap(a, b);
      m = Scalar(-1) * m;
    }
    rho_[pair_index(a, b, g_dim_)] = std::move(m);
  }

  /// ρ(x, y) on arbitrary vectors.
  Matrix rho(const Vector& x, const Vector& y) const {
    Matrix out(m_, m_);
    for (Index a = 0; a < g_dim_; ++a)
      for (Index b = a + 1; b < g_dim_; ++b) {
        Scalar c = x[a] * y[b] - x[b] * y[a];
        if (!is_zero(c)) out = out + c * rho_[pair_index(a, b, g_dim_)];
      }
    return out;
  }

  bool operator==(const Representation& o) const {
    return g_dim_ == o.g_dim_ && m_ == o.m_ && rho_ == o.rho_;
  }

  static Representation zero(std::size_t g_dim, std::size_t m) { return Representation(g_dim, m); }

  /// ρ(x, y) z = [x, y, z].
  static Representation adjoint(const PreCochain& pi) {
    const std::size_t d = pi.dim();
    Representation r(d, d);
    for (Index a = 0; a < d; ++a)
      for (Index b = a + 1; b < d; ++b) {
        Matrix m(d, d);
        for (Index c = 0; c < d; ++c) {
          Index args[3] = {a, b, c};
          auto v = pi.eval(args);
          for (Index t = 0; t < d; ++t) m.set(t, c, v[t]);
        }
        r.set(a, b, std::move(m));
      }
    return r;
  }
  static Representation adjoint(const ThreeLieAlgebra& a) { return adjoint(a.structure()); }

 private:
  void check(Index a, Index b) const {
    if (a >= g_dim_ || b >= g_dim_) throw DimensionError("representation index out of range");
  }

  std::size_t g_dim_ = 0, m_ = 0;
  std::vector<Matrix> rho_;
};

/// ρ*(x, y) = −ρ(x, y)ᵀ.
inline Representation dual_representation(const Representation& r) {
  Representation out(r.g_dim(), r.module_dim());
  for (Index a = 0; a < r.g_dim(); ++a)
    for (Index b = a + 1; b < r.g_dim(); ++b) out.set(a, b, Scalar(-1) * r.canonical(a, b).transpose());
  return out;
}

/// Restriction to the coordinate subspace spanned by `basis` (0-based). The
/// caller is responsible for invariance; validate_representation detects a
/// non-invariant choice.
inline Representation restrict_representation(const Representation& r, const std::vector<Index>& basis) {
  Representation out(r.g_dim(), basis.size());
  for (Index a = 0; a < r.g_dim(); ++a)
    for (Index b = a + 1; b < r.g_dim(); ++b) {
      Matrix m(basis.size(), basis.size());
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) m.set(i, j, r.canonical(a, b).get(basis[i], basis[j]));
      out.set(a, b, std::move(m));
    }
  return out;
}

struct RepViolation {
  int identity = 1;  // 1: ρ(x1,x2)ρ(x3,x4) law, 2: ρ(x1,[x2,x3,x4]) law
  std::array<Index, 4> args;
  Matrix lhs, rhs;
};

struct RepReport {
  bool holds = true;
  std::vector<RepViolation> violations;
};

/// Both representation identities over all basis 4-tuples:
///   ρ(x1,x2)ρ(x3,x4) = ρ([x1,x2,x3],x4) + ρ(x3,[x1,x2,x4]) + ρ(x3,x4)ρ(x1,x2)
///   ρ(x1,[x2,x3,x4]) = ρ(x3,x4)ρ(x1,x2) − ρ(x2,x4)ρ(x1,x3) + ρ(x2,x3)ρ(x1,x4)
inline RepReport validate_representation(const PreCochain& pi, const Representation& r) {
  const std::size_t d = pi.dim();
  if (r.g_dim() != d) throw DimensionError("representation and algebra dimensions differ");
  RepReport report;
  auto e = [&](Index i) { return unit_vector(d, i); };
  auto br = [&](Index a, Index b, Index c) {
    Index args[3] = {a, b, c};
    return pi.eval(args);
  };
  for (Index x1 = 0; x1 < d; ++x1)
    for (Index x2 = 0; x2 < d; ++x2)
      for (Index x3 = 0; x3 < d; ++x3)
        for (Index x4 = 0; x4 < d; ++x4) {
          if (x1 < x2 && x3 < x4) {
            Matrix lhs = r.rho(x1, x2) * r.rho(x3, x4);
            Matrix rhs = r.rho(br(x1, x2, x3), e(x4)) + r.rho(e(x3), br(x1, x2, x4)) + r.rho(x3, x4) * r.rho(x1, x2);
            if (!(lhs == rhs)) {
              report.holds = false;
              report.violations.push_back({1, {x1, x2, x3, x4}, std::move(lhs), std::move(rhs)});
            }
          }
          if (x2 < x3 && x3 < x4) {
            Matrix lhs = r.rho(e(x1), br(x2, x3, x4));
            Matrix rhs = r.rho(x3, x4) * r.rho(x1, x2) - r.rho(x2, x4) * r.rho(x1, x3) + r.rho(x2, x3) * r.rho(x1, x4);
            if (!(lhs == rhs)) {
              report.holds = false;
              report.violations.push_back({2, {x1, x2, x3, x4}, std::move(lhs), std::move(rhs)});
            }
          }
        }
  return report;
}

inline RepReport validate_representation(const ThreeLieAlgebra& a, const Representation& r) {
  return validate_representation(a.structure(), r);
}

/// Lift ρ̂ of a representation to g ⊕ V:
/// ρ̂((x,u),(y,v),(z,w)) = (0, ρ(x,y)w + ρ(y,z)u + ρ(z,x)v).
inline PreCochain lift_representation(const Representation& r) {
  const std::size_t d = r.g_dim(), D = d + r.module_dim();
  PreCochain out(1, D, D);
  for (Index a = 0; a < d; ++a)
    for (Index b = a + 1; b < d; ++b)
      for (Index s = 0; s < r.module_dim(); ++s) {
        Vector v(D);
        bool nz = false;
        for (Index t = 0; t < r.module_dim(); ++t) {
          v[d + t] = r.entry(a, b, t, s);
          nz = nz || !is_zero(v[d + t]);
        }
        if (!nz) continue;
        // value at (e_a, e_b, u_s); the cyclic placements follow from skewness
        Index args[3] = {a, b, static_cast<Index>(d + s)};
        out.set(args, v);
        Index args2[3] = {b, static_cast<Index>(d + s), a};
        out.set(args2, v);
        Index args3[3] = {static_cast<Index>(d + s), a, b};
        out.set(args3, v);
      }
  return out;
}

/// The bracket π̂ + ρ̂ on g ⊕ V.
inline PreCochain semidirect_structure(const PreCochain& pi, const Representation& r) {
  return lift_bracket(pi, r.module_dim()) + lift_representation(r);
}

inline ThreeLieAlgebra semidirect(const ThreeLieAlgebra& a, const Representation& r) {
  return ThreeLieAlgebra(semidirect_structure(a.structure(), r));
}

// ---------------------------------------------------------------------------
// Coboundary operators with coefficients.
//
// CE-degree n: an n-cochain has weight n−1 (n−1 pair slots and a final slot).

namespace detail {

/// out += coeff · (dⁿf)(x) by the explicit four-sum expansion, f of weight n−1.
template <class FMap, class R>
void explicit_coboundary_at(const PreCochain& pi, const Representation& r, const FMap& f, const Index* x,
                            const Scalar& coeff, std::vector<R>& out) {
  const std::size_t n = f.weight() + 1, d = pi.dim(), m = r.module_dim();
  Index fargs[kMaxArity];
  auto bracket = [&](Index a, Index b, Index c) {
    Index args[3] = {a, b, c};
    Canonical cc = canonicalize(args, 1, d);
    const Vector* v = cc.sign ? pi.find(cc.key) : nullptr;
    return std::pair<const Vector*, int>{v, cc.sign};
  };
  // f(args) with args[slot] replaced by Σ_i vec[i] e_i, accumulated as out += c·f(...)
  auto add_f = [&](const Scalar& c, std::size_t slot, const Vector* vec, int vsign) {
    if (!vec) return;
    for (Index i = 0; i < d; ++i) {
      if (is_zero((*vec)[i])) continue;
      fargs[slot] = i;
      visit(f, fargs, [&](int fs, const auto& fv) {
        const Scalar cc = c * (*vec)[i] * (vsign * fs);
        for (std::size_t t = 0; t < m; ++t) add_product(out[t], cc, Scalar(1), fv[t]);
      });
    }
  };
  // out += c · ρ(a, b) f(fargs)
  auto add_rho_f = [&](const Scalar& c, Index a, Index b) {
    if (a == b) return;
    visit(f, fargs, [&](int fs, const auto& fv) {
      for (Index t = 0; t < m; ++t)
        for (Index s = 0; s < m; ++s) {
          Scalar rts = r.entry(a, b, t, s);
          if (is_zero(rts)) continue;
          add_product(out[t], c * fs, rts, fv[s]);
        }
    });
  };
  auto X = [&](std::size_t j) { return std::pair<Index, Index>{x[2 * (j - 1)], x[2 * (j - 1) + 1]}; };  // 1-based
  const Index xlast = x[2 * n];

  // fills fargs with the pairs X_1..X_n except X_j, final slot `fin`
  auto fill_without = [&](std::size_t j, Index fin) {
    std::size_t p = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      if (i == j) continue;
      fargs[2 * p] = X(i).first;
      fargs[2 * p + 1] = X(i).second;
      ++p;
    }
    fargs[2 * p] = fin;
  };

  for (std::size_t j = 1; j <= n; ++j) {
    const Scalar sj = coeff * parity_sign(j);
    auto [xj, yj] = X(j);
    for (std::size_t k = j + 1; k <= n; ++k) {
      auto [xk, yk] = X(k);
      fill_without(j, xlast);
      const std::size_t slot = 2 * (k - 2);  // position of pair k once X_j is removed
      // [xj,yj,xk] ∧ yk
      {
        auto [v, s] = bracket(xj, yj, xk);
        fargs[slot + 1] = yk;
        add_f(sj, slot, v, s);
      }
      // xk ∧ [xj,yj,yk]
      {
        fill_without(j, xlast);
        auto [v, s] = bracket(xj, yj, yk);
        fargs[slot] = xk;
        add_f(sj, slot + 1, v, s);
      }
    }
    fill_without(j, xlast);
    {
      auto [v, s] = bracket(xj, yj, xlast);
      add_f(sj, 2 * (n - 1), v, s);
    }
    fill_without(j, xlast);
    add_rho_f(-sj, xj, yj);
  }
  auto [xn, yn] = X(n);
  const Scalar last = coeff * parity_sign(n + 1);
  fill_without(n, xn);
  add_rho_f(last, yn, xlast);
  fill_without(n, yn);
  add_rho_f(last, xlast, xn);
}

/// out += coeff · (dⁿf)(x) as (−1)^{n−1}[π̂+ρ̂, f̂] at all-g arguments, projected to V.
template <class FMap, class R>
void lift_coboundary_at(const PreCochain& lifted_structure, std::size_t g_dim, const FMap& f, const Index* x,
                        const Scalar& coeff, std::vector<R>& out) {
  LiftedMap<FMap> fhat(f, g_dim);
  const std::size_t n = f.weight() + 1;
  const std::size_t D = lifted_structure.dim();
  std::vector<R> full(D, R());
  bracket_accumulate(lifted_structure, fhat, x, coeff * parity_sign(n - 1), full);
  for (std::size_t t = 0; t + g_dim < D; ++t) add_scaled(out[t], Scalar(1), full[g_dim + t]);
}

}  // namespace detail

enum class CoboundaryRoute { Explicit, Lift };

/// Coboundary dⁿf of an n-cochain (weight n−1) through one route.
inline PreCochain coboundary_via(const PreCochain& pi, const Representation& r, const PreCochain& f,
                                 CoboundaryRoute route) {
  const std::size_t d = pi.dim(), m = r.module_dim();
  if (f.dim() != d || f.target_dim() != m) throw DimensionError("cochain does not match algebra and module");
  const std::size_t w = f.weight() + 1;
  if (2 * w + 1 > detail::kMaxArity) throw DimensionError("degree too large");
  PreCochain lifted;
  if (route == CoboundaryRoute::Lift) lifted = semidirect_structure(pi, r);
  const std::size_t nkeys = raw_key_count(w, d);
  std::vector<Vector> results(nkeys);
  detail::parallel_chunks(nkeys, thread_count(), [&](std::size_t b, std::size_t e) {
    Index x[detail::kMaxArity];
    for (std::size_t key = b; key < e; ++key) {
      decode_key(key, w, d, x);
      Vector out(m);
      if (route == CoboundaryRoute::Explicit)
        detail::explicit_coboundary_at(pi, r, f, x, Scalar(1), out);
      else
        detail::lift_coboundary_at(lifted, d, f, x, Scalar(1), out);
      results[key] = std::move(out);
    }
  });
  PreCochain c(w, d, m);
  for (std::size_t key = 0; key < nkeys; ++key) c.set_key(key, std::move(results[key]));
  return c;
}

/// dⁿf computed by the explicit expansion and by the lifted bracket; the two
/// must agree exactly.
inline PreCochain coboundary(const PreCochain& pi, const Representation& r, const PreCochain& f) {
  PreCochain a = coboundary_via(pi, r, f, CoboundaryRoute::Explicit);
  PreCochain b = coboundary_via(pi, r, f, CoboundaryRoute::Lift);
  if (!(a == b))
    throw ConsistencyError("explicit and lifted coboundary disagree at weight " + std::to_string(f.weight()));
  return a;
}

inline PreCochain coboundary(const ThreeLieAlgebra& a, const Representation& r, const PreCochain& f) {
  return coboundary(a.structure(), r, f);
}

/// Self-coefficient coboundary (−1)^{n−1}[π, f] without lifting.
inline PreCochain coboundary_bracket(const PreCochain& pi, const PreCochain& f) {
  return Scalar(detail::parity_sign(f.weight())) * nr_bracket(pi, f);
}

/// Rows of dⁿ for one coefficient structure, evaluated on generic cochains:
/// row (output coordinate) → linear form in the input coordinates.
struct CoboundaryShape {
  std::size_t ce_degree = 1;  // n: maps n-cochains to (n+1)-cochains
  bool admissible = true;
};

inline std::size_t cochain_space_dim(std::size_t weight, std::size_t d, std::size_t m, bool admissible) {
  return (admissible ? admissible_key_count(weight, d) : raw_key_count(weight, d)) * m;
}

/// Arguments at which output coordinate block `i` is read.
inline std::vector<Index> output_args(std::size_t i, std::size_t w, std::size_t d, bool admissible) {
  return admissible ? admissible_args(i, w, d) : decode_key(i, w, d);
}

namespace detail {

/// Evaluates `row_fn(x, out)` at every output coordinate block and collects the
/// linear forms as sparse rows.
template <class RowFn>
Matrix assemble_rows(std::size_t out_weight, std::size_t d, std::size_t m, bool admissible, std::size_t cols,
                     RowFn&& row_fn) {
  const std::size_t blocks = admissible ? admissible_key_count(out_weight, d) : raw_key_count(out_weight, d);
  const std::size_t rows = blocks * m;
  if (rows * cols > 1000000)
    std::cerr << "note: assembling a " << rows << " x " << cols << " coboundary matrix (~"
              << rows * cols * 16 / 1000000 << " MB if dense)\n";
  std::vector<SparseVec> data(rows);
  parallel_chunks(blocks, thread_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      auto x = output_args(i, out_weight, d, admissible);
      std::vector<LinearForm> out(m);
      row_fn(x.data(), out);
      for (std::size_t t = 0; t < m; ++t) {
        out[t].normalize();
        SparseVec row;
        row.reserve(out[t].terms.size());
        for (auto& [k, v] : out[t].terms) row.emplace_back(k, std::move(v));
        data[i * m + t] = std::move(row);
      }
    }
  });
  return Matrix::from_rows(cols, std::move(data));
}

}  // namespace detail

/// Matrix of dⁿ: Cⁿ(g, V) → Cⁿ⁺¹(g, V) on admissible (or raw) bases.
inline Matrix coboundary_matrix(const PreCochain& pi, const Representation& r, std::size_t ce_degree, bool admissible,
                                CoboundaryRoute route = CoboundaryRoute::Lift) {
  if (ce_degree < 1) throw PreconditionError("CE-degree starts at 1");
  const std::size_t d = pi.dim(), m = r.module_dim();
  const std::size_t w = ce_degree - 1;
  GenericCochain f(w, d, m, admissible);
  PreCochain lifted;
  if (route == CoboundaryRoute::Lift) lifted = semidirect_structure(pi, r);
  return detail::assemble_rows(w + 1, d, m, admissible, f.size(), [&](const Index* x, std::vector<LinearForm>& out) {
    if (route == CoboundaryRoute::Explicit)
      detail::explicit_coboundary_at(pi, r, f, x, Scalar(1), out);
    else
      detail::lift_coboundary_at(lifted, d, f, x, Scalar(1), out);
  });
}

/// Default bound on the cohomology degree; TRILIE_MAX_DEGREE overrides it.
inline std::size_t max_degree_bound() {
  if (const char* env = std::getenv("TRILIE_MAX_DEGREE")) {
    try {
      return static_cast<std::size_t>(std::stoul(env));
    } catch (...) {
      throw PreconditionError("TRILIE_MAX_DEGREE is not a number");
    }
  }
  return 4;
}

struct DegreeReport {
  std::size_t degree = 0;
  std::size_t cochain_dim = 0;
  std::size_t kernel_dim = 0;   // dim ker dⁿ
  std::size_t image_rank = 0;   // rank dⁿ⁻¹ (into this degree)
  bool complex_law = true;      // dⁿ ∘ dⁿ⁻¹ = 0
  std::optional<std::size_t> cohomology_dim;  // absent when the complex law fails
};

struct CochainComplexReport {
  bool admissible = true;
  std::vector<DegreeReport> degrees;
};

/// Kernel dimensions, image ranks and cohomology from a sequence of
/// differential matrices D[1..N] (D[0] unused, treated as zero).
inline CochainComplexReport complex_report(const std::vector<Matrix>& D, const std::vector<std::size_t>& dims,
                                           bool admissible) {
  CochainComplexReport rep;
  rep.admissible = admissible;
  std::vector<std::size_t> ranks(D.size(), 0);
  for (std::size_t n = 1; n < D.size(); ++n) ranks[n] = rank(D[n]);
  for (std::size_t n = 1; n < D.size(); ++n) {
    DegreeReport dr;
    dr.degree = n;
    dr.cochain_dim = dims[n];
    dr.kernel_dim = dims[n] - ranks[n];
    dr.image_rank = n >= 2 ? ranks[n - 1] : 0;
    if (n >= 2) dr.complex_law = (D[n] * D[n - 1]).is_zero();
    if (dr.complex_law) {
      dr.cohomology_dim = quotient_dim(dr.kernel_dim, dr.image_rank);
    } else if (admissible) {
      throw ConsistencyError("d∘d ≠ 0 at degree " + std::to_string(n));
    }
    rep.degrees.push_back(dr);
  }
  return rep;
}

inline void check_degree(std::size_t max_degree) {
  if (max_degree < 1) throw PreconditionError("degree must be at least 1");
  if (max_degree > max_degree_bound())
    throw PreconditionError("degree " + std::to_string(max_degree) + " exceeds the bound " +
                            std::to_string(max_degree_bound()) + " (set TRILIE_MAX_DEGREE to raise it)");
}

/// Hⁿ(g; V) for n = 1..max_degree.
inline CochainComplexReport cohomology(const PreCochain& pi, const Representation& r, std::size_t max_degree,
                                       bool admissible = true) {
  check_degree(max_degree);
  std::vector<Matrix> D(max_degree + 1);
  std::vector<std::size_t> dims(max_degree + 1);
  for (std::size_t n = 1; n <= max_degree; ++n) {
    D[n] = coboundary_matrix(pi, r, n, admissible);
    dims[n] = D[n].cols();
  }
  return complex_report(D, dims, admissible);
}

inline CochainComplexReport cohomology(const ThreeLieAlgebra& a, const Representation& r, std::size_t max_degree,
                                       bool admissible = true) {
  return cohomology(a.structure(), r, max_degree, admissible);
}

// ---------------------------------------------------------------------------
// Nijenhuis operators

inline Matrix power(const Matrix& n, int k) {
  Matrix out = Matrix::identity(n.rows());
  for (int i = 0; i < k; ++i) out = out * n;
  return out;
}

/// N ∘ c for a weight-1 pre-cochain c.
inline PreCochain compose_output(const Matrix& n, const PreCochain& c) {
  PreCochain out(c.weight(), c.dim(), n.rows());
  for (const auto& [k, v] : c.entries()) out.set_key(k, n * v);
  return out;
}

/// ½([[π,N],N] − [π,N²]).
inline PreCochain deformed_bracket_via_nr(const PreCochain& pi, const Matrix& n) {
  const PreCochain N = endomorphism_cochain(n), N2 = endomorphism_cochain(n * n);
  return Scalar(1, 2) * (nr_bracket(nr_bracket(pi, N), N) - nr_bracket(pi, N2));
}

/// [Nx,Ny,z] + [x,Ny,Nz] + [Nx,y,Nz] − N([Nx,y,z] + [x,Ny,z] + [x,y,Nz]) + N²[x,y,z].
inline PreCochain deformed_bracket_explicit(const PreCochain& pi, const Matrix& n) {
  const std::size_t d = pi.dim();
  const Matrix n2 = n * n;
  return trilinear_from(d, d, [&](Index a, Index b, Index c) {
    Vector x = unit_vector(d, a), y = unit_vector(d, b), z = unit_vector(d, c);
    Vector nx = n * x, ny = n * y, nz = n * z;
    auto br = [&](const Vector& p, const Vector& q, const Vector& s) { return eval_vectors(pi, {p, q, s}); };
    Vector two = br(nx, ny, z), one = br(nx, y, z);
    Vector t = br(x, ny, nz), o2 = br(x, ny, z);
    Vector u = br(nx, y, nz), o3 = br(x, y, nz);
    Vector plain = br(x, y, z);
    Vector ones(d);
    for (std::size_t i = 0; i < d; ++i) {
      two[i] += t[i] + u[i];
      ones[i] = one[i] + o2[i] + o3[i];
    }
    Vector none = n * ones, nn = n2 * plain;
    for (std::size_t i = 0; i < d; ++i) two[i] += nn[i] - none[i];
    return two;
  });
}

/// ½[[[π,N],N],N] − ½[[π,N²],N] − [[π,N],N²] + [π,N³].
inline PreCochain nijenhuis_torsion_via_nr(const PreCochain& pi, const Matrix& n) {
  const PreCochain N = endomorphism_cochain(n), N2 = endomorphism_cochain(n * n), N3 = endomorphism_cochain(n * n * n);
  const PreCochain piN = nr_bracket(pi, N);
  return Scalar(1, 2) * nr_bracket(nr_bracket(piN, N), N) - Scalar(1, 2) * nr_bracket(nr_bracket(pi, N2), N) -
         nr_bracket(piN, N2) + nr_bracket(pi, N3);
}

/// 3[Nx,Ny,Nz] − 3N([x,y,z]_N).
inline PreCochain nijenhuis_torsion_explicit(const PreCochain& pi, const Matrix& n) {
  const std::size_t d = pi.dim();
  const PreCochain piN = deformed_bracket_explicit(pi, n);
  return trilinear_from(d, d, [&](Index a, Index b, Index c) {
    Vector v = eval_vectors(pi, {n * unit_vector(d, a), n * unit_vector(d, b), n * unit_vector(d, c)});
    Index args[3] = {a, b, c};
    Vector w = n * piN.eval(args);
    for (std::size_t i = 0; i < d; ++i) v[i] = 3 * v[i] - 3 * w[i];
    return v;
  });
}

/// Torsion by both routes; they must agree exactly.
inline PreCochain nijenhuis_torsion(const PreCochain& pi, const Matrix& n) {
  PreCochain a = nijenhuis_torsion_via_nr(pi, n), b = nijenhuis_torsion_explicit(pi, n);
  if (!(a == b)) throw ConsistencyError("Nijenhuis torsion: bracket form and explicit form disagree");
  return a;
}

inline bool is_nijenhuis(const PreCochain& pi, const Matrix& n) { return nijenhuis_torsion(pi, n).is_zero(); }

/// N ∘ π_N = π ∘ (N ⊗ N ⊗ N).
inline bool is_homomorphism(const Matrix& n, const PreCochain& from, const PreCochain& to) {
  const std::size_t d = from.dim();
  for (Index a = 0; a < d; ++a)
    for (Index b = a + 1; b < d; ++b)
      for (Index c = b + 1; c < d; ++c) {
        Index args[3] = {a, b, c};
        Vector lhs = n * from.eval(args);
        Vector rhs = eval_vectors(to, {n * unit_vector(d, a), n * unit_vector(d, b), n * unit_vector(d, c)});
        if (lhs != rhs) return false;
      }
  return true;
}

struct DeformedBracket {
  PreCochain bracket;
  bool torsion_zero = false;
  bool validated = false;     // FI holds for the deformed bracket
  bool homomorphism = false;  // N: (g, π_N) → (g, π)
};

/// π_N by the explicit formula and by ½([[π,N],N] − [π,N²]), cross-checked.
/// A non-Nijenhuis N still yields the formula's output, flagged unvalidated.
inline DeformedBracket deformed_bracket(const PreCochain& pi, const Matrix& n) {
  DeformedBracket out;
  out.bracket = deformed_bracket_explicit(pi, n);
  if (!(out.bracket == deformed_bracket_via_nr(pi, n)))
    throw ConsistencyError("deformed bracket: explicit and bracket forms disagree");
  out.torsion_zero = is_nijenhuis(pi, n);
  out.validated = validate_fi(out.bracket).holds;
  out.homomorphism = is_homomorphism(n, out.bracket, pi);
  return out;
}

struct PairCompatibility {
  bool compatible = false;    // [[π,N],[π,N]] = 0
  bool proof_identity = false;  // [π, π_N] = −½[[π,N],[π,N]]
};

inline PairCompatibility nijenhuis_pair_compatibility(const PreCochain& pi, const Matrix& n) {
  const PreCochain piN = nr_bracket(pi, endomorphism_cochain(n));
  const PreCochain sq = nr_bracket(piN, piN);
  PairCompatibility out;
  out.compatible = sq.is_zero();
  out.proof_identity = nr_bracket(pi, deformed_bracket_explicit(pi, n)) == Scalar(-1, 2) * sq;
  return out;
}

}  // namespace trilie

#endif  // TRILIE_THREE_LIE_HPP
