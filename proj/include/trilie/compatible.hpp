#ifndef TRILIE_COMPATIBLE_HPP
#define TRILIE_COMPATIBLE_HPP

// Compatible pairs of 3-Lie brackets: validation, the bicomplex and its
// cohomology, deformations, Nijenhuis operators, compatible representations.

#include <array>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "multilinear.hpp"
#include "scalar.hpp"
#include "three_lie.hpp"

namespace trilie {

/// Two brackets π₁ = [·,·,·] and π₂ = {·,·,·} on one space.
struct CompatiblePair {
  PreCochain pi1, pi2;

  CompatiblePair() = default;
  CompatiblePair(PreCochain a, PreCochain b) : pi1(std::move(a)), pi2(std::move(b)) {
    for (const PreCochain* p : {&pi1, &pi2}) {
      if (p->weight() != 1 || p->target_dim() != p->dim())
        throw DimensionError("a bracket is a weight-1 cochain with values in the algebra");
      if (!is_admissible(*p).admissible) throw DimensionError("bracket is not skew-symmetric in all three arguments");
    }
    if (pi1.dim() != pi2.dim()) throw DimensionError("the two brackets live on spaces of different dimension");
  }

  std::size_t dim() const { return pi1.dim(); }
  const PreCochain& bracket(int i) const { return i == 0 ? pi1 : pi2; }
  bool operator==(const CompatiblePair&) const = default;
};

/// Representations ρ of π₁ and μ of π₂ on one module.
struct CompatibleRepresentation {
  Representation rho, mu;

  std::size_t module_dim() const { return rho.module_dim(); }
  const Representation& rep(int i) const { return i == 0 ? rho : mu; }
  bool operator==(const CompatibleRepresentation&) const = default;

  static CompatibleRepresentation adjoint(const CompatiblePair& p) {
    return {Representation::adjoint(p.pi1), Representation::adjoint(p.pi2)};
  }
  static CompatibleRepresentation zero(std::size_t g_dim, std::size_t m) {
    return {Representation::zero(g_dim, m), Representation::zero(g_dim, m)};
  }
};

inline CompatibleRepresentation dual_representation(const CompatibleRepresentation& r) {
  return {dual_representation(r.rho), dual_representation(r.mu)};
}

/// Ordered n-tuple of cochains sharing weight and coefficients.
using BicochainTuple = std::vector<PreCochain>;

struct DeformationData {
  PreCochain omega1, omega2;
  std::optional<PreCochain> omega1_tilde, omega2_tilde;
  bool operator==(const DeformationData&) const = default;
};

// ---------------------------------------------------------------------------
// Compatibility

struct MixedViolation {
  std::array<Index, 5> args;
  Vector lhs, rhs;
};

/// The mixed identity
///   [x1,x2,{x3,x4,x5}] + {x1,x2,[x3,x4,x5]}
///     = [{x1,x2,x3},x4,x5] + {[x1,x2,x3],x4,x5} + [x3,{x1,x2,x4},x5]
///       + {x3,[x1,x2,x4],x5} + [x3,x4,{x1,x2,x5}] + {x3,x4,[x1,x2,x5]}
/// over x1 < x2, x3 < x4 < x5.
inline std::vector<MixedViolation> mixed_identity_violations(const PreCochain& p1, const PreCochain& p2) {
  const std::size_t d = p1.dim();
  std::vector<MixedViolation> out;
  auto e = [&](Index i) { return unit_vector(d, i); };
  auto b1 = [&](const Vector& x, const Vector& y, const Vector& z) { return eval_vectors(p1, {x, y, z}); };
  auto b2 = [&](const Vector& x, const Vector& y, const Vector& z) { return eval_vectors(p2, {x, y, z}); };
  auto add = [](Vector& acc, const Vector& v) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
  };
  for (Index x1 = 0; x1 < d; ++x1)
    for (Index x2 = x1 + 1; x2 < d; ++x2)
      for (Index x3 = 0; x3 < d; ++x3)
        for (Index x4 = x3 + 1; x4 < d; ++x4)
          for (Index x5 = x4 + 1; x5 < d; ++x5) {
            Vector lhs = b1(e(x1), e(x2), b2(e(x3), e(x4), e(x5)));
            add(lhs, b2(e(x1), e(x2), b1(e(x3), e(x4), e(x5))));
            Vector rhs = b1(b2(e(x1), e(x2), e(x3)), e(x4), e(x5));
            add(rhs, b2(b1(e(x1), e(x2), e(x3)), e(x4), e(x5)));
            add(rhs, b1(e(x3), b2(e(x1), e(x2), e(x4)), e(x5)));
            add(rhs, b2(e(x3), b1(e(x1), e(x2), e(x4)), e(x5)));
            add(rhs, b1(e(x3), e(x4), b2(e(x1), e(x2), e(x5))));
            add(rhs, b2(e(x3), e(x4), b1(e(x1), e(x2), e(x5))));
            if (lhs != rhs) out.push_back({{x1, x2, x3, x4, x5}, std::move(lhs), std::move(rhs)});
          }
  return out;
}

/// Deterministic pencil grid. FI of k₁π₁ + k₂π₂ is a quadratic form in
/// (k₁, k₂) with coefficients FI(π₁), the mixed identity and FI(π₂); any three
/// pairwise non-proportional points determine it, so the grid decides the
/// pencil exactly (nine points for redundancy).
inline const std::vector<std::pair<int, int>>& pencil_grid() {
  static const std::vector<std::pair<int, int>> grid = {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1},
                                                        {1, 2}, {3, -1}, {-1, 3}, {2, 3}};
  return grid;
}

/// `count` random nonzero (k₁, k₂) with entries in [−5, 5].
inline std::vector<std::pair<int, int>> pencil_fuzz(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-5, 5);
  std::vector<std::pair<int, int>> out;
  while (out.size() < count) {
    int a = dist(rng), b = dist(rng);
    if (a != 0 || b != 0) out.emplace_back(a, b);
  }
  return out;
}

inline PreCochain pencil(const CompatiblePair& p, const Scalar& k1, const Scalar& k2) {
  return k1 * p.pi1 + k2 * p.pi2;
}

struct PencilReport {
  bool holds = true;
  std::vector<std::pair<int, int>> failing;  // sample points whose bracket fails FI
};

inline PencilReport pencil_check(const CompatiblePair& p, const std::vector<std::pair<int, int>>& samples) {
  PencilReport out;
  for (auto [a, b] : samples)
    if (!validate_fi(pencil(p, a, b)).holds) {
      out.holds = false;
      out.failing.emplace_back(a, b);
    }
  return out;
}

struct CompatibilityReport {
  FiReport fi1, fi2;
  std::vector<MixedViolation> mixed;  // failures of the six-term identity
  bool mixed_holds = true;
  bool bracket_zero = true;  // [π₁, π₂] = 0
  PencilReport pencil;
  bool compatible = false;
};

/// FI for both brackets, the six-term mixed identity, [π₁,π₂] = 0 and the
/// pencil grid. The three characterizations must agree.
inline CompatibilityReport validate_compatible(const CompatiblePair& p,
                                               const std::vector<std::pair<int, int>>& samples = pencil_grid()) {
  CompatibilityReport r;
  r.fi1 = validate_fi(p.pi1);
  r.fi2 = validate_fi(p.pi2);
  r.mixed = mixed_identity_violations(p.pi1, p.pi2);
  r.mixed_holds = r.mixed.empty();
  r.bracket_zero = nr_bracket(p.pi1, p.pi2).is_zero();
  r.pencil = pencil_check(p, samples);
  const bool both = r.fi1.holds && r.fi2.holds;
  r.compatible = both && r.mixed_holds;
  if (r.mixed_holds != r.bracket_zero)
    throw ConsistencyError("mixed identity and [π1,π2] = 0 disagree");
  if (r.compatible != r.pencil.holds)
    throw ConsistencyError("pencil check disagrees with the mixed identity");
  return r;
}

struct McTriple {
  bool pi1_pi1 = false, pi1_pi2 = false, pi2_pi2 = false;
  bool all() const { return pi1_pi1 && pi1_pi2 && pi2_pi2; }
};

inline McTriple compatible_mc_check(const PreCochain& p1, const PreCochain& p2) {
  return {nr_bracket(p1, p1).is_zero(), nr_bracket(p1, p2).is_zero(), nr_bracket(p2, p2).is_zero()};
}

struct DeformationMcReport {
  std::array<bool, 3> equations{};  // the three Maurer–Cartan type equations
  bool holds = false;
};

/// d_{π₁}π̃₁ + ½[π̃₁,π̃₁] = 0, d_{π₂}π̃₂ + ½[π̃₂,π̃₂] = 0,
/// d_{π₁}π̃₂ + d_{π₂}π̃₁ + [π̃₁,π̃₂] = 0, with d_π = [π, ·]; cross-checked
/// against validate_compatible of (π₁+π̃₁, π₂+π̃₂).
inline DeformationMcReport deformation_mc_check(const CompatiblePair& base, const PreCochain& t1,
                                                const PreCochain& t2) {
  DeformationMcReport r;
  const Scalar half(1, 2);
  r.equations[0] = (nr_bracket(base.pi1, t1) + half * nr_bracket(t1, t1)).is_zero();
  r.equations[1] = (nr_bracket(base.pi2, t2) + half * nr_bracket(t2, t2)).is_zero();
  r.equations[2] = (nr_bracket(base.pi1, t2) + nr_bracket(base.pi2, t1) + nr_bracket(t1, t2)).is_zero();
  r.holds = r.equations[0] && r.equations[1] && r.equations[2];
  const bool direct = validate_compatible(CompatiblePair(base.pi1 + t1, base.pi2 + t2)).compatible;
  if (direct != r.holds) throw ConsistencyError("Maurer–Cartan equations disagree with direct validation");
  return r;
}

// ---------------------------------------------------------------------------
// The bicomplex

/// dⁿ with self-coefficients, (−1)^{n−1}[π, ·], as a matrix (no lift).
inline Matrix self_coboundary_matrix(const PreCochain& pi, std::size_t ce_degree, bool admissible) {
  if (ce_degree < 1) throw PreconditionError("CE-degree starts at 1");
  const std::size_t d = pi.dim(), w = ce_degree - 1;
  GenericCochain f(w, d, d, admissible);
  const Scalar sign(detail::parity_sign(w));
  return detail::assemble_rows(w + 1, d, d, admissible, f.size(), [&](const Index* x, std::vector<LinearForm>& out) {
    bracket_accumulate(pi, f, x, sign, out);
  });
}

/// Coefficients of a bicomplex: absent means the algebra itself via the bracket.
using Coefficients = std::optional<CompatibleRepresentation>;

/// The two component differentials D₁ = d_{π₁(+ρ)}, D₂ = d_{π₂(+μ)} at CE-degree n.
inline std::array<Matrix, 2> component_differentials(const CompatiblePair& p, const Coefficients& coeffs,
                                                     std::size_t n, bool admissible) {
  if (!coeffs)
    return {self_coboundary_matrix(p.pi1, n, admissible), self_coboundary_matrix(p.pi2, n, admissible)};
  return {coboundary_matrix(p.pi1, coeffs->rho, n, admissible), coboundary_matrix(p.pi2, coeffs->mu, n, admissible)};
}

/// Block matrix of δⁿ: component i of the output is D₁ω_i + D₂ω_{i−1}.
inline Matrix bicomplex_matrix(const std::array<Matrix, 2>& D, std::size_t n) {
  const std::size_t r = D[0].rows(), c = D[0].cols();
  std::vector<std::size_t> rows(n + 1, r), cols(n, c);
  std::vector<std::vector<const Matrix*>> blocks(n + 1, std::vector<const Matrix*>(n, nullptr));
  for (std::size_t i = 0; i <= n; ++i) {
    if (i < n) blocks[i][i] = &D[0];
    if (i >= 1) blocks[i][i - 1] = &D[1];
  }
  return Matrix::block(rows, cols, blocks);
}

inline Matrix bicomplex_matrix(const CompatiblePair& p, const Coefficients& coeffs, std::size_t n, bool admissible) {
  return bicomplex_matrix(component_differentials(p, coeffs, n, admissible), n);
}

/// δⁿ on an explicit tuple (n components of weight n−1).
inline BicochainTuple bicomplex_delta(const CompatiblePair& p, const Coefficients& coeffs, const BicochainTuple& t) {
  const std::size_t n = t.size();
  if (n == 0) throw DimensionError("empty cochain tuple");
  for (const auto& c : t)
    if (c.weight() != n - 1)
      throw DimensionError("a CE-degree " + std::to_string(n) + " tuple needs components of weight " +
                           std::to_string(n - 1));
  auto D = [&](int which, const PreCochain& f) {
    if (!coeffs) return coboundary_bracket(p.bracket(which), f);
    return coboundary(p.bracket(which), coeffs->rep(which), f);
  };
  const std::size_t m = t[0].target_dim();
  BicochainTuple out(n + 1, PreCochain(n, p.dim(), m));
  for (std::size_t i = 0; i <= n; ++i) {
    if (i < n) out[i] += D(0, t[i]);
    if (i >= 1) out[i] += D(1, t[i - 1]);
  }
  return out;
}

/// Cohomology of the bicomplex for n = 1..max_degree.
inline CochainComplexReport compatible_cohomology(const CompatiblePair& p, const Coefficients& coeffs,
                                                  std::size_t max_degree, bool admissible = true) {
  check_degree(max_degree);
  std::vector<Matrix> D(max_degree + 1);
  std::vector<std::size_t> dims(max_degree + 1);
  for (std::size_t n = 1; n <= max_degree; ++n) {
    D[n] = bicomplex_matrix(p, coeffs, n, admissible);
    dims[n] = D[n].cols();
  }
  return complex_report(D, dims, admissible);
}

/// Derivations of both brackets at once, from the defining equations.
inline std::vector<Matrix> compatible_derivations(const CompatiblePair& p) {
  std::vector<Matrix> out;
  for (const auto& v : kernel_basis(derivation_system({&p.pi1, &p.pi2}, p.dim())))
    out.push_back(coordinates_to_matrix(v, p.dim()));
  return out;
}

// ---------------------------------------------------------------------------
// Infinitesimal deformations

struct InfinitesimalReport {
  std::array<bool, 3> equations{};  // [π₁,ω₁]=0, [π₁,ω₂]+[π₂,ω₁]=0, [π₂,ω₂]=0
  bool cocycle = false;
};

inline InfinitesimalReport infinitesimal_check(const PreCochain& p1, const PreCochain& p2, const PreCochain& w1,
                                               const PreCochain& w2) {
  InfinitesimalReport r;
  r.equations[0] = nr_bracket(p1, w1).is_zero();
  r.equations[1] = (nr_bracket(p1, w2) + nr_bracket(p2, w1)).is_zero();
  r.equations[2] = nr_bracket(p2, w2).is_zero();
  r.cocycle = r.equations[0] && r.equations[1] && r.equations[2];
  return r;
}

inline InfinitesimalReport infinitesimal_check(const CompatiblePair& p, const DeformationData& d) {
  return infinitesimal_check(p.pi1, p.pi2, d.omega1, d.omega2);
}

/// Outcome of solving (a₁, a₂) = δ¹X: either a witness X or a certificate y
/// with yᵀδ¹ = 0 and yᵀ(a₁, a₂) = 1 (raw coordinates).
struct CoboundarySolve {
  std::optional<Matrix> witness;
  std::optional<Vector> certificate;
};

/// Solves (a₁, a₂) = δ¹X for X: g → V (V = g for self-coefficients).
inline CoboundarySolve solve_coboundary(const CompatiblePair& p, const Coefficients& coeffs, const PreCochain& a1,
                                        const PreCochain& a2) {
  const std::size_t d = p.dim();
  const std::size_t m = coeffs ? coeffs->module_dim() : d;
  for (const PreCochain* a : {&a1, &a2})
    if (a->weight() != 1 || a->dim() != d || a->target_dim() != m)
      throw DimensionError("2-cochain has the wrong shape");
  const Matrix M = bicomplex_matrix(p, coeffs, 1, false);
  Vector b = cochain_coordinates(a1, false);
  Vector b2 = cochain_coordinates(a2, false);
  b.insert(b.end(), b2.begin(), b2.end());
  CoboundarySolve out;
  if (auto sol = solve_affine(M, b)) {
    Matrix x(m, d);
    for (std::size_t s = 0; s < d; ++s)
      for (std::size_t t = 0; t < m; ++t) x.set(t, s, sol->particular[s * m + t]);
    out.witness = std::move(x);
  } else {
    out.certificate = infeasibility_certificate(M, b);
  }
  return out;
}

/// Equivalence of infinitesimal deformations: (ω₁−ω₁′, ω₂−ω₂′) = δ¹N.
inline CoboundarySolve infinitesimal_equivalent(const CompatiblePair& p, const DeformationData& a,
                                                const DeformationData& b) {
  return solve_coboundary(p, std::nullopt, a.omega1 - b.omega1, a.omega2 - b.omega2);
}

// ---------------------------------------------------------------------------
// Order-2 deformations

struct Order2Report {
  // blocks[b][e]: equation e of block b
  std::array<std::array<bool, 3>, 4> blocks{};
  bool block_holds(int b) const { return blocks[b][0] && blocks[b][1] && blocks[b][2]; }
  bool holds() const { return block_holds(0) && block_holds(1) && block_holds(2) && block_holds(3); }
};

/// The twelve bracket equations of a 2-order 1-parameter deformation
/// π_i + tω_i + t²ω̃_i, in four blocks of three:
///   1. [π₁,ω₁], [π₁,ω₂]+[π₂,ω₁], [π₂,ω₂]
///   2. [π₁,ω̃₁]+½[ω₁,ω₁], [ω̃₁,π₂]+[ω₁,ω₂]+[π₁,ω̃₂], [π₂,ω̃₂]+½[ω₂,ω₂]
///   3. [ω₁,ω̃₁], [ω̃₁,ω₂]+[ω̃₂,ω₁], [ω₂,ω̃₂]
///   4. [ω̃₁,ω̃₁], [ω̃₁,ω̃₂], [ω̃₂,ω̃₂]
/// Block 1 is checked against infinitesimal_check, block 4 against
/// validate_compatible of (ω̃₁, ω̃₂) and block 3 against the cocycle
/// condition of (ω₁, ω₂) for (ω̃₁, ω̃₂).
inline Order2Report order2_check(const CompatiblePair& p, const DeformationData& d) {
  if (!d.omega1_tilde || !d.omega2_tilde) throw PreconditionError("order-2 check needs omega1_tilde and omega2_tilde");
  const PreCochain &w1 = d.omega1, &w2 = d.omega2, &v1 = *d.omega1_tilde, &v2 = *d.omega2_tilde;
  const PreCochain &p1 = p.pi1, &p2 = p.pi2;
  const Scalar half(1, 2);
  auto br = [](const PreCochain& a, const PreCochain& b) { return nr_bracket(a, b); };
  Order2Report r;
  r.blocks[0] = {br(p1, w1).is_zero(), (br(p1, w2) + br(p2, w1)).is_zero(), br(p2, w2).is_zero()};
  r.blocks[1] = {(br(p1, v1) + half * br(w1, w1)).is_zero(), (br(v1, p2) + br(w1, w2) + br(p1, v2)).is_zero(),
                 (br(p2, v2) + half * br(w2, w2)).is_zero()};
  r.blocks[2] = {br(w1, v1).is_zero(), (br(v1, w2) + br(v2, w1)).is_zero(), br(w2, v2).is_zero()};
  r.blocks[3] = {br(v1, v1).is_zero(), br(v1, v2).is_zero(), br(v2, v2).is_zero()};

  if (infinitesimal_check(p1, p2, w1, w2).cocycle != r.block_holds(0))
    throw ConsistencyError("order-2 block 1 disagrees with the 2-cocycle check");
  if (infinitesimal_check(v1, v2, w1, w2).cocycle != r.block_holds(2))
    throw ConsistencyError("order-2 block 3 disagrees with the 2-cocycle check for the tilde pair");
  const bool tilde_admissible = is_admissible(v1).admissible && is_admissible(v2).admissible;
  if (tilde_admissible && validate_compatible(CompatiblePair(v1, v2)).compatible != r.block_holds(3))
    throw ConsistencyError("order-2 block 4 disagrees with validating the tilde pair");
  return r;
}

// ---------------------------------------------------------------------------
// Nijenhuis operators on compatible pairs

/// N∘π_N − π∘(N⊗N⊗N); its vanishing is the Nijenhuis condition.
inline PreCochain nijenhuis_defect(const PreCochain& pi, const Matrix& n) {
  const std::size_t d = pi.dim();
  const PreCochain piN = deformed_bracket_explicit(pi, n);
  return trilinear_from(d, d, [&](Index a, Index b, Index c) {
    Index args[3] = {a, b, c};
    Vector v = n * piN.eval(args);
    Vector w = eval_vectors(pi, {n * unit_vector(d, a), n * unit_vector(d, b), n * unit_vector(d, c)});
    for (std::size_t i = 0; i < d; ++i) v[i] -= w[i];
    return v;
  });
}

struct CompatibleNijenhuisReport {
  bool nijenhuis1 = false, nijenhuis2 = false;
  bool pencil_consistent = true;  // Nijenhuis for every grid pencil ⟺ for both brackets
  bool deformed_linear = true;    // (k₁π₁+k₂π₂)_N = k₁(π₁)_N + k₂(π₂)_N on the grid
  bool defect_linear = true;      // the same for N∘π_N − π(N·,N·,N·)
  bool nijenhuis() const { return nijenhuis1 && nijenhuis2; }
};

inline CompatibleNijenhuisReport compatible_nijenhuis_check(const CompatiblePair& p, const Matrix& n,
                                                           const std::vector<std::pair<int, int>>& samples =
                                                               pencil_grid()) {
  CompatibleNijenhuisReport r;
  r.nijenhuis1 = is_nijenhuis(p.pi1, n);
  r.nijenhuis2 = is_nijenhuis(p.pi2, n);
  const PreCochain d1 = nijenhuis_defect(p.pi1, n), d2 = nijenhuis_defect(p.pi2, n);
  const PreCochain n1 = deformed_bracket_explicit(p.pi1, n), n2 = deformed_bracket_explicit(p.pi2, n);
  bool all_pencils = true;
  for (auto [a, b] : samples) {
    const PreCochain pk = pencil(p, a, b);
    all_pencils = all_pencils && is_nijenhuis(pk, n);
    if (!(deformed_bracket_explicit(pk, n) == Scalar(a) * n1 + Scalar(b) * n2)) r.deformed_linear = false;
    if (!(nijenhuis_defect(pk, n) == Scalar(a) * d1 + Scalar(b) * d2)) r.defect_linear = false;
  }
  r.pencil_consistent = all_pencils == r.nijenhuis();
  return r;
}

struct DeformedPair {
  CompatiblePair pair;
  bool compatible = false;
  bool homomorphism = false;  // N: (g, π₁_N, π₂_N) → (g, π₁, π₂)
};

inline DeformedPair deformed_compatible_pair(const CompatiblePair& p, const Matrix& n) {
  DeformedPair out;
  const auto a = deformed_bracket(p.pi1, n), b = deformed_bracket(p.pi2, n);
  out.pair = CompatiblePair(a.bracket, b.bracket);
  out.compatible = validate_compatible(out.pair).compatible;
  out.homomorphism = a.homomorphism && b.homomorphism;
  return out;
}

/// ω_i = [π_i, N] and ω̃_i = (π_i)_N.
inline DeformationData trivial_deformation_from_nijenhuis(const CompatiblePair& p, const Matrix& n) {
  const PreCochain N = endomorphism_cochain(n);
  DeformationData d;
  d.omega1 = nr_bracket(p.pi1, N);
  d.omega2 = nr_bracket(p.pi2, N);
  d.omega1_tilde = deformed_bracket_explicit(p.pi1, n);
  d.omega2_tilde = deformed_bracket_explicit(p.pi2, n);
  return d;
}

struct TrivialityReport {
  std::array<bool, 6> equations{};
  bool trivial() const {
    for (bool b : equations)
      if (!b) return false;
    return true;
  }
};

/// For each bracket π with data (ω, ω̃):
///   ω = [Nx,y,z] + [x,Ny,z] + [x,y,Nz] − N[x,y,z]
///   ω̃ + Nω = [Nx,Ny,z] + [Nx,y,Nz] + [x,Ny,Nz]
///   Nω̃ = [Nx,Ny,Nz]
inline TrivialityReport triviality_check(const CompatiblePair& p, const DeformationData& data, const Matrix& n) {
  if (!data.omega1_tilde || !data.omega2_tilde) throw PreconditionError("triviality check needs the tilde cochains");
  TrivialityReport r;
  const std::size_t d = p.dim();
  for (int i = 0; i < 2; ++i) {
    const PreCochain& pi = p.bracket(i);
    const PreCochain& w = i == 0 ? data.omega1 : data.omega2;
    const PreCochain& v = i == 0 ? *data.omega1_tilde : *data.omega2_tilde;
    auto ev = [&](Index a, Index b, Index c, int mask) {
      Vector x = unit_vector(d, a), y = unit_vector(d, b), z = unit_vector(d, c);
      if (mask & 1) x = n * x;
      if (mask & 2) y = n * y;
      if (mask & 4) z = n * z;
      return eval_vectors(pi, {x, y, z});
    };
    auto sum = [&](Index a, Index b, Index c, std::initializer_list<int> masks) {
      Vector out(d);
      for (int mk : masks) {
        Vector t = ev(a, b, c, mk);
        for (std::size_t k = 0; k < d; ++k) out[k] += t[k];
      }
      return out;
    };
    const PreCochain e1 = trilinear_from(d, d, [&](Index a, Index b, Index c) {
      Vector s = sum(a, b, c, {1, 2, 4});
      Vector t = n * ev(a, b, c, 0);
      for (std::size_t k = 0; k < d; ++k) s[k] -= t[k];
      return s;
    });
    const PreCochain e2 = trilinear_from(d, d, [&](Index a, Index b, Index c) { return sum(a, b, c, {3, 5, 6}); });
    const PreCochain e3 = trilinear_from(d, d, [&](Index a, Index b, Index c) { return ev(a, b, c, 7); });
    r.equations[3 * i + 0] = w == e1;
    r.equations[3 * i + 1] = v + compose_output(n, w) == e2;
    r.equations[3 * i + 2] = compose_output(n, v) == e3;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Compatible representations

struct CompatibleRepReport {
  RepReport rho, mu;
  std::vector<RepViolation> mixed;  // identity 3 or 4 for the two mixed laws
  bool holds = false;
  bool semidirect_compatible = false;
};

/// The two mixed identities, for all basis 4-tuples:
///   ρ({x1,x2,x3},x4) + μ([x1,x2,x3],x4) + ρ(x3,{x1,x2,x4}) + μ(x3,[x1,x2,x4])
///     = [ρ(x1,x2),μ(x3,x4)] − [ρ(x3,x4),μ(x1,x2)]
///   ρ({x1,x2,x3},x4) + μ([x1,x2,x3],x4) − ρ(x3,x1)μ(x2,x4) − μ(x3,x1)ρ(x2,x4)
///     = ρ(x1,x2)μ(x3,x4) + μ(x1,x2)ρ(x3,x4) + ρ(x2,x3)μ(x1,x4) + μ(x2,x3)ρ(x1,x4)
inline std::vector<RepViolation> mixed_representation_violations(const CompatiblePair& p,
                                                                  const CompatibleRepresentation& r) {
  const std::size_t d = p.dim();
  std::vector<RepViolation> out;
  auto e = [&](Index i) { return unit_vector(d, i); };
  auto b1 = [&](Index a, Index b, Index c) {
    Index args[3] = {a, b, c};
    return p.pi1.eval(args);
  };
  auto b2 = [&](Index a, Index b, Index c) {
    Index args[3] = {a, b, c};
    return p.pi2.eval(args);
  };
  const Representation &rho = r.rho, &mu = r.mu;
  for (Index x1 = 0; x1 < d; ++x1)
    for (Index x2 = 0; x2 < d; ++x2)
      for (Index x3 = 0; x3 < d; ++x3)
        for (Index x4 = 0; x4 < d; ++x4) {
          const Matrix common = rho.rho(b2(x1, x2, x3), e(x4)) + mu.rho(b1(x1, x2, x3), e(x4));
          {
            Matrix lhs = common + rho.rho(e(x3), b2(x1, x2, x4)) + mu.rho(e(x3), b1(x1, x2, x4));
            Matrix rhs = rho.rho(x1, x2) * mu.rho(x3, x4) - mu.rho(x3, x4) * rho.rho(x1, x2) -
                         (rho.rho(x3, x4) * mu.rho(x1, x2) - mu.rho(x1, x2) * rho.rho(x3, x4));
            if (!(lhs == rhs)) out.push_back({3, {x1, x2, x3, x4}, std::move(lhs), std::move(rhs)});
          }
          {
            Matrix lhs = common - rho.rho(x3, x1) * mu.rho(x2, x4) - mu.rho(x3, x1) * rho.rho(x2, x4);
            Matrix rhs = rho.rho(x1, x2) * mu.rho(x3, x4) + mu.rho(x1, x2) * rho.rho(x3, x4) +
                         rho.rho(x2, x3) * mu.rho(x1, x4) + mu.rho(x2, x3) * rho.rho(x1, x4);
            if (!(lhs == rhs)) out.push_back({4, {x1, x2, x3, x4}, std::move(lhs), std::move(rhs)});
          }
        }
  return out;
}

inline CompatiblePair semidirect_compatible(const CompatiblePair& p, const CompatibleRepresentation& r) {
  return CompatiblePair(semidirect_structure(p.pi1, r.rho), semidirect_structure(p.pi2, r.mu));
}

/// Representation axioms for ρ and μ plus the mixed identities; the verdict
/// must match whether the semidirect brackets form a compatible pair.
inline CompatibleRepReport validate_compatible_representation(const CompatiblePair& p,
                                                              const CompatibleRepresentation& r) {
  if (r.rho.g_dim() != p.dim() || r.mu.g_dim() != p.dim() || r.rho.module_dim() != r.mu.module_dim())
    throw DimensionError("representation shapes do not match the pair");
  CompatibleRepReport out;
  out.rho = validate_representation(p.pi1, r.rho);
  out.mu = validate_representation(p.pi2, r.mu);
  out.mixed = mixed_representation_violations(p, r);
  out.holds = out.rho.holds && out.mu.holds && out.mixed.empty();
  out.semidirect_compatible = validate_compatible(semidirect_compatible(p, r)).compatible;
  if (out.holds != out.semidirect_compatible)
    throw ConsistencyError("representation axioms disagree with the semidirect product test");
  return out;
}

/// The three lifted Maurer–Cartan equations of the semidirect pair:
/// [π̂₁+ρ̂, π̂₁+ρ̂] = 0, [π̂₁+ρ̂, π̂₂+μ̂] = 0, [π̂₂+μ̂, π̂₂+μ̂] = 0.
inline McTriple semidirect_mc_check(const CompatiblePair& p, const CompatibleRepresentation& r) {
  const CompatiblePair s = semidirect_compatible(p, r);
  return compatible_mc_check(s.pi1, s.pi2);
}

}  // namespace trilie

#endif  // TRILIE_COMPATIBLE_HPP
