#ifndef TRILIE_EXTENSIONS_HPP
#define TRILIE_EXTENSIONS_HPP

// Abelian extensions g ⊕ V of a compatible pair by a compatible representation.

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "compatible.hpp"

namespace trilie {

struct AbelianExtension {
  CompatiblePair base;
  CompatibleRepresentation rep;
  PreCochain omega1, omega2;  // weight 1, values in V
  CompatiblePair total;       // transferred brackets on g ⊕ V

  std::size_t g_dim() const { return base.dim(); }
  std::size_t module_dim() const { return rep.module_dim(); }
  const PreCochain& omega(int i) const { return i == 0 ? omega1 : omega2; }
};

/// Transferred brackets on g ⊕ V:
/// [x+u, y+v, z+w] = [x,y,z] + ρ(x,y)w + ρ(y,z)u + ρ(z,x)v + ω₁(x,y,z), and the
/// same with {·,·,·}, μ, ω₂.
inline CompatiblePair transferred_pair(const CompatiblePair& base, const CompatibleRepresentation& rep,
                                       const PreCochain& omega1, const PreCochain& omega2) {
  const std::size_t d = base.dim(), m = rep.module_dim();
  for (const PreCochain* w : {&omega1, &omega2}) {
    if (w->weight() != 1 || w->dim() != d || w->target_dim() != m)
      throw DimensionError("extension cocycles must be trilinear maps g → V");
    if (!is_admissible(*w).admissible) throw DimensionError("extension cocycle is not skew-symmetric");
  }
  const CompatiblePair s = semidirect_compatible(base, rep);
  return CompatiblePair(s.pi1 + lift_cochain(omega1, d), s.pi2 + lift_cochain(omega2, d));
}

struct ExtensionBuild {
  std::optional<AbelianExtension> extension;
  std::array<bool, 3> cocycle_equations{};  // the three components of δ²(ω₁, ω₂)
  bool cocycle = false;
  bool total_compatible = false;
};

/// Assembles the transferred brackets. The extension is returned only when
/// (ω₁, ω₂) is a 2-cocycle; both that test and validation of the total pair
/// are run and must agree.
inline ExtensionBuild build_extension(const CompatiblePair& base, const CompatibleRepresentation& rep,
                                      const PreCochain& omega1, const PreCochain& omega2) {
  if (!validate_compatible_representation(base, rep).holds)
    throw PreconditionError("extension needs a valid compatible representation");
  ExtensionBuild out;
  const BicochainTuple delta = bicomplex_delta(base, rep, {omega1, omega2});
  for (int i = 0; i < 3; ++i) out.cocycle_equations[i] = delta[i].is_zero();
  out.cocycle = out.cocycle_equations[0] && out.cocycle_equations[1] && out.cocycle_equations[2];
  CompatiblePair total = transferred_pair(base, rep, omega1, omega2);
  out.total_compatible = validate_compatible(total).compatible;
  if (out.cocycle != out.total_compatible)
    throw ConsistencyError("cocycle condition disagrees with validating the transferred brackets");
  if (out.cocycle) out.extension = AbelianExtension{base, rep, omega1, omega2, std::move(total)};
  return out;
}

/// Brackets with at least two arguments in V vanish.
inline bool is_abelian_extension(const CompatiblePair& total, std::size_t g_dim) {
  const std::size_t D = total.dim();
  for (int i = 0; i < 2; ++i)
    for (Index a = 0; a < D; ++a)
      for (Index b = std::max<Index>(a + 1, static_cast<Index>(g_dim)); b < D; ++b)
        for (Index c = b + 1; c < D; ++c) {
          Index args[3] = {a, b, c};
          if (!is_zero(total.bracket(i).eval(args))) return false;
        }
  return true;
}

/// Section σ: g → g ⊕ V as a (d+m)×d matrix with identity top block.
inline Matrix canonical_section(std::size_t d, std::size_t m) {
  Matrix s(d + m, d);
  for (std::size_t i = 0; i < d; ++i) s.set(i, i, Scalar(1));
  return s;
}

/// σ + τ, for τ: g → V an m×d matrix.
inline Matrix shifted_section(const Matrix& tau) {
  const std::size_t d = tau.cols(), m = tau.rows();
  Matrix s = canonical_section(d, m);
  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t j = 0; j < d; ++j) s.set(d + t, j, tau.get(t, j));
  return s;
}

namespace detail {

inline void check_extension_input(const CompatiblePair& total, std::size_t g_dim, const Matrix& sigma) {
  if (g_dim > total.dim()) throw DimensionError("g is larger than the extension");
  if (sigma.rows() != total.dim() || sigma.cols() != g_dim) throw DimensionError("section has the wrong shape");
  for (std::size_t i = 0; i < g_dim; ++i)
    for (std::size_t j = 0; j < g_dim; ++j)
      if (sigma.get(i, j) != Scalar(i == j ? 1 : 0)) throw PreconditionError("section is not a right inverse of the projection");
  if (!is_abelian_extension(total, g_dim)) throw PreconditionError("extension is not abelian");
}

}  // namespace detail

/// ρ(x,y)u = [σx, σy, u], μ(x,y)u = {σx, σy, u}.
inline CompatibleRepresentation induced_representation(const CompatiblePair& total, std::size_t g_dim,
                                                       const Matrix& sigma) {
  detail::check_extension_input(total, g_dim, sigma);
  const std::size_t D = total.dim(), m = D - g_dim;
  CompatibleRepresentation out = CompatibleRepresentation::zero(g_dim, m);
  for (int i = 0; i < 2; ++i) {
    Representation& r = i == 0 ? out.rho : out.mu;
    for (Index a = 0; a < g_dim; ++a)
      for (Index b = a + 1; b < g_dim; ++b) {
        Matrix block(m, m);
        for (Index s = 0; s < m; ++s) {
          Vector v = eval_vectors(total.bracket(i), {sigma.column(a), sigma.column(b), unit_vector(D, g_dim + s)});
          for (std::size_t t = 0; t < g_dim; ++t)
            if (!is_zero(v[t])) throw PreconditionError("V is not an ideal of the extension");
          for (Index t = 0; t < m; ++t) block.set(t, s, v[g_dim + t]);
        }
        r.set(a, b, block);
      }
  }
  return out;
}

/// ω_i(x,y,z) = π_i(σx,σy,σz) − σ(π_i(x,y,z)), where π_i on g is the
/// projection of the total bracket.
inline std::pair<PreCochain, PreCochain> extract_cocycle(const CompatiblePair& total, std::size_t g_dim,
                                                         const Matrix& sigma) {
  detail::check_extension_input(total, g_dim, sigma);
  const std::size_t D = total.dim(), m = D - g_dim;
  std::array<PreCochain, 2> out;
  for (int i = 0; i < 2; ++i) {
    const PreCochain& pi = total.bracket(i);
    out[i] = trilinear_from(g_dim, m, [&](Index a, Index b, Index c) {
      Vector v = eval_vectors(pi, {sigma.column(a), sigma.column(b), sigma.column(c)});
      Index args[3] = {a, b, c};
      Vector base = pi.eval(args);
      base.resize(g_dim);
      Vector sb = sigma * base;
      for (std::size_t k = 0; k < D; ++k) v[k] -= sb[k];
      for (std::size_t t = 0; t < g_dim; ++t)
        if (!is_zero(v[t])) throw PreconditionError("projection is not a homomorphism on the given section");
      return Vector(v.begin() + static_cast<std::ptrdiff_t>(g_dim), v.end());
    });
  }
  return {std::move(out[0]), std::move(out[1])};
}

inline std::pair<PreCochain, PreCochain> extract_cocycle(const AbelianExtension& e, const Matrix& sigma) {
  return extract_cocycle(e.total, e.g_dim(), sigma);
}

/// δ¹τ = (d_{π₁+ρ}τ, d_{π₂+μ}τ) for τ: g → V.
inline std::pair<PreCochain, PreCochain> delta1(const CompatiblePair& base, const CompatibleRepresentation& rep,
                                                const Matrix& tau) {
  if (tau.rows() != rep.module_dim() || tau.cols() != base.dim()) throw DimensionError("τ must be a map g → V");
  const BicochainTuple t = bicomplex_delta(base, rep, {endomorphism_cochain(tau)});
  return {t[0], t[1]};
}

struct ClassificationReport {
  bool isomorphic = false;
  std::optional<Matrix> tau;          // ω − ω′ = δ¹τ
  std::optional<Matrix> theta;        // θ(x+u) = x + τx + u, from ext(ω) to ext(ω′)
  std::optional<Vector> certificate;  // y with yᵀδ¹ = 0, yᵀ(ω − ω′) = 1
};

/// Decides whether ext(ω) ≅ ext(ω′) through a map θ(x+u) = x + τx + u.
inline ClassificationReport classify(const AbelianExtension& e1, const AbelianExtension& e2) {
  if (!(e1.base == e2.base) || !(e1.rep == e2.rep))
    throw PreconditionError("classification needs extensions of the same pair by the same representation");
  ClassificationReport out;
  CoboundarySolve s = solve_coboundary(e1.base, e1.rep, e1.omega1 - e2.omega1, e1.omega2 - e2.omega2);
  if (!s.witness) {
    if (!s.certificate) throw ConsistencyError("neither a witness nor a certificate was produced");
    out.certificate = std::move(s.certificate);
    return out;
  }
  const Matrix& tau = *s.witness;
  const std::size_t d = e1.g_dim(), m = e1.module_dim();
  Matrix theta = Matrix::identity(d + m);
  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t j = 0; j < d; ++j) theta.set(d + t, j, tau.get(t, j));
  for (int i = 0; i < 2; ++i)
    if (!is_homomorphism(theta, e1.total.bracket(i), e2.total.bracket(i)))
      throw ConsistencyError("constructed θ is not a homomorphism of the extensions");
  out.isomorphic = true;
  out.tau = tau;
  out.theta = std::move(theta);
  return out;
}

}  // namespace trilie

#endif  // TRILIE_EXTENSIONS_HPP
