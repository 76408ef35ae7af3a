#include <gtest/gtest.h>

#include "../oracles.hpp"

using namespace trilie;
using namespace oracle;

namespace {

CompatiblePair noncompatible_pair() {
  PreCochain p2(1, 4, 4);
  set_admissible(p2, std::vector<Index>{0, 1, 3}, e(4, 1));
  return CompatiblePair(gen::sample_pair().pi1, p2);
}

Vector tuple_coordinates(const BicochainTuple& t) {
  Vector out;
  for (const auto& c : t) {
    Vector v = cochain_coordinates(c, true);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

}  // namespace

TEST(Compatibility, SamplePairAllCharacterizations) {
  const auto p = gen::sample_pair();
  const auto r = validate_compatible(p);
  EXPECT_TRUE(r.compatible);
  EXPECT_TRUE(r.mixed_holds);
  EXPECT_TRUE(r.bracket_zero);
  EXPECT_TRUE(r.pencil.holds);
  EXPECT_EQ(r.pencil.failing.size(), 0u);
  EXPECT_TRUE(compatible_by_polarization(p));
  EXPECT_TRUE(compatible_mc_check(p.pi1, p.pi2).all());
}

TEST(Compatibility, NoncompatiblePairFailsAtSumTuple) {
  const auto p = noncompatible_pair();
  const auto r = validate_compatible(p);
  EXPECT_TRUE(r.fi1.holds);
  EXPECT_TRUE(r.fi2.holds);
  EXPECT_FALSE(r.compatible);
  EXPECT_FALSE(r.bracket_zero);
  EXPECT_FALSE(r.pencil.holds);
  EXPECT_FALSE(compatible_by_polarization(p));
  const auto sum = validate_fi(p.pi1 + p.pi2);
  bool found = false;
  for (const auto& v : sum.violations) found = found || v.args == std::array<Index, 5>{1, 2, 0, 1, 3};
  EXPECT_TRUE(found);
}

TEST(Compatibility, RandomPairsAgreeWithPolarization) {
  gen::Rng rng(41);
  for (int i = 0; i < 16; ++i) {
    CompatiblePair p = i % 2 ? gen::random_compatible_pair(3 + (i / 2) % 2, rng)
                             : CompatiblePair(gen::random_skew_bracket(4, rng, 0.15), gen::random_skew_bracket(4, rng, 0.15));
    const auto r = validate_compatible(p, pencil_fuzz(i, 12));
    EXPECT_EQ(r.compatible, compatible_by_polarization(p)) << i;
    if (i % 2) EXPECT_TRUE(r.compatible);
  }
}

TEST(Compatibility, PairRejectsBadShapes) {
  EXPECT_THROW(CompatiblePair(PreCochain(1, 3, 3), PreCochain(1, 4, 4)), DimensionError);
  PreCochain nonskew(1, 3, 3);
  nonskew.set(std::vector<Index>{0, 1, 2}, Vector{1, 0, 0});
  EXPECT_THROW(CompatiblePair(nonskew, PreCochain(1, 3, 3)), DimensionError);
}

TEST(Compatibility, DeformationMaurerCartan) {
  const auto p = gen::sample_pair();
  // π̃ᵢ = πᵢ keeps the pair compatible: (2π₁, 2π₂)
  EXPECT_TRUE(deformation_mc_check(p, p.pi1, p.pi2).holds);
  const auto q = noncompatible_pair();
  EXPECT_FALSE(deformation_mc_check(p, PreCochain(1, 4, 4), q.pi2 - p.pi2).holds);
}

TEST(Bicomplex, MatrixMatchesTupleDelta) {
  gen::Rng rng(42);
  const auto p = gen::sample_pair();
  for (const Coefficients& c : {Coefficients{}, Coefficients{gen::sub_adjoint(p, 3)}}) {
    const std::size_t m = c ? c->module_dim() : 4;
    for (std::size_t n = 1; n <= 2; ++n) {
      BicochainTuple t;
      for (std::size_t i = 0; i < n; ++i) t.push_back(gen::random_cochain(n - 1, 4, m, rng));
      EXPECT_EQ(bicomplex_matrix(p, c, n, true) * tuple_coordinates(t), tuple_coordinates(bicomplex_delta(p, c, t)));
    }
  }
}

TEST(Bicomplex, DeltaSquaredIsZero) {
  const auto p = gen::sample_pair();
  for (const Coefficients& c :
       {Coefficients{}, Coefficients{CompatibleRepresentation::adjoint(p)}, Coefficients{gen::sub_adjoint(p, 3)},
        Coefficients{dual_representation(gen::sub_adjoint(p, 3))}})
    for (std::size_t n = 1; n <= 3; ++n)
      EXPECT_TRUE((bicomplex_matrix(p, c, n + 1, true) * bicomplex_matrix(p, c, n, true)).is_zero()) << n;
}

TEST(Bicomplex, SamplePairCohomology) {
  const auto p = gen::sample_pair();
  const std::size_t expected[][4] = {{16, 8, 0, 8}, {32, 14, 8, 6}, {288, 42, 18, 24}};
  for (const Coefficients& c : {Coefficients{}, Coefficients{CompatibleRepresentation::adjoint(p)}}) {
    const auto rep = compatible_cohomology(p, c, 3);
    ASSERT_EQ(rep.degrees.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(rep.degrees[i].cochain_dim, expected[i][0]);
      EXPECT_EQ(rep.degrees[i].kernel_dim, expected[i][1]);
      EXPECT_EQ(rep.degrees[i].image_rank, expected[i][2]);
      EXPECT_EQ(rep.degrees[i].cohomology_dim, expected[i][3]);
    }
  }
}

TEST(Bicomplex, FirstCohomologyIsCommonDerivations) {
  gen::Rng rng(43);
  std::vector<CompatiblePair> pairs = {gen::sample_pair(), gen::random_compatible_pair(3, rng),
                                       gen::random_compatible_pair(4, rng)};
  for (const auto& p : pairs) {
    const std::size_t naive = derivation_dim_naive({p.pi1, p.pi2}, p.dim());
    EXPECT_EQ(compatible_derivations(p).size(), naive);
    EXPECT_EQ(compatible_cohomology(p, std::nullopt, 1).degrees[0].cohomology_dim, naive);
  }
}

TEST(Infinitesimal, CoboundariesAreCocyclesAndSolve) {
  gen::Rng rng(44);
  const auto p = gen::sample_pair();
  const Matrix n = gen::random_matrix(4, 4, rng);
  const auto d = bicomplex_delta(p, std::nullopt, {endomorphism_cochain(n)});
  EXPECT_TRUE(infinitesimal_check(p.pi1, p.pi2, d[0], d[1]).cocycle);
  const auto s = solve_coboundary(p, std::nullopt, d[0], d[1]);
  ASSERT_TRUE(s.witness);
  EXPECT_FALSE(s.certificate);
  const auto back = bicomplex_delta(p, std::nullopt, {endomorphism_cochain(*s.witness)});
  EXPECT_EQ(back[0], d[0]);
  EXPECT_EQ(back[1], d[1]);
}

TEST(Infinitesimal, NonzeroClassHasCertificate) {
  const auto p = gen::sample_pair();
  const Matrix d1 = bicomplex_matrix(p, std::nullopt, 1, true), d2 = bicomplex_matrix(p, std::nullopt, 2, true);
  // a cocycle outside the image of δ¹
  const auto cocycles = kernel_basis(d2);
  const std::size_t r = rank(d1);
  for (const auto& z : cocycles) {
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < d1.cols(); ++j) cols.push_back(d1.column(j));
    cols.push_back(z);
    if (rank(Matrix::from_columns(z.size(), cols)) == r) continue;
    const std::size_t half = z.size() / 2;
    const PreCochain w1 = cochain_from_coordinates(Vector(z.begin(), z.begin() + half), 1, 4, 4, true);
    const PreCochain w2 = cochain_from_coordinates(Vector(z.begin() + half, z.end()), 1, 4, 4, true);
    EXPECT_TRUE(infinitesimal_check(p.pi1, p.pi2, w1, w2).cocycle);
    const auto s = solve_coboundary(p, std::nullopt, w1, w2);
    EXPECT_FALSE(s.witness);
    ASSERT_TRUE(s.certificate);
    return;
  }
  FAIL() << "no nonzero class found";
}

TEST(Order2, NijenhuisDataSatisfiesAllBlocks) {
  const auto p = gen::sample_pair();
  auto ops = gen::find_nijenhuis(p, 3, 1);
  ops.push_back(Matrix(4, 4));
  ops.push_back(Matrix::identity(4));
  ops.push_back(Scalar(-2) * Matrix::identity(4));
  for (const auto& n : ops) {
    const auto rep = compatible_nijenhuis_check(p, n);
    EXPECT_TRUE(rep.nijenhuis());
    EXPECT_TRUE(rep.pencil_consistent);
    EXPECT_TRUE(rep.deformed_linear);
    EXPECT_TRUE(rep.defect_linear);
    const auto data = trivial_deformation_from_nijenhuis(p, n);
    EXPECT_TRUE(order2_check(p, data).holds());
    EXPECT_TRUE(triviality_check(p, data, n).trivial());
    const auto dp = deformed_compatible_pair(p, n);
    EXPECT_TRUE(dp.compatible);
    EXPECT_TRUE(dp.homomorphism);
  }
}

TEST(Order2, NonNijenhuisOperatorFailsLaterBlocks) {
  const auto p = gen::sample_pair();
  Matrix n(4, 4);
  n.set(0, 1, 1);
  n.set(2, 3, 1);
  n.set(3, 0, 1);
  ASSERT_FALSE(is_nijenhuis(p.pi1, n) && is_nijenhuis(p.pi2, n));
  const auto data = trivial_deformation_from_nijenhuis(p, n);
  const auto r = order2_check(p, data);
  EXPECT_TRUE(r.block_holds(0));
  EXPECT_FALSE(r.holds());
  EXPECT_THROW(order2_check(p, DeformationData{data.omega1, data.omega2, {}, {}}), PreconditionError);
}

TEST(Nijenhuis, DefectVanishesExactlyForNijenhuis) {
  const auto p = gen::sample_pair();
  for (const auto& n : gen::find_nijenhuis(p, 2, 5)) {
    EXPECT_TRUE(nijenhuis_defect(p.pi1, n).is_zero());
    EXPECT_TRUE(nijenhuis_defect(p.pi2, n).is_zero());
  }
}

TEST(CompatibleRepresentation, AdjointDualAndSubmodule) {
  const auto p = gen::sample_pair();
  for (const auto& r : {CompatibleRepresentation::adjoint(p), dual_representation(CompatibleRepresentation::adjoint(p)),
                        gen::sub_adjoint(p, 3), dual_representation(gen::sub_adjoint(p, 3)),
                        CompatibleRepresentation::zero(4, 2)}) {
    const auto rep = validate_compatible_representation(p, r);
    EXPECT_TRUE(rep.holds);
    EXPECT_TRUE(rep.semidirect_compatible);
    EXPECT_TRUE(compatible_by_polarization(semidirect_compatible(p, r)));
    EXPECT_TRUE(semidirect_mc_check(p, r).all());
  }
}

TEST(CompatibleRepresentation, MismatchedPairFails) {
  const auto p = gen::sample_pair();
  // ρ = ad π₁ with μ = 0 breaks the mixed identities
  const CompatibleRepresentation r{Representation::adjoint(p.pi1), Representation::zero(4, 4)};
  const auto rep = validate_compatible_representation(p, r);
  EXPECT_EQ(rep.holds, compatible_by_polarization(semidirect_compatible(p, r)));
  EXPECT_FALSE(rep.holds);
  EXPECT_FALSE(rep.mixed.empty());
}
