#include <gtest/gtest.h>

#include "../oracles.hpp"

using namespace trilie;
using namespace oracle;

namespace {

CompatiblePair abelian_pair(std::size_t d) { return CompatiblePair(PreCochain(1, d, d), PreCochain(1, d, d)); }

PreCochain top_form(std::size_t d, std::size_t m, const Scalar& c) {
  PreCochain w(1, d, m);
  Vector v(m);
  v[0] = c;
  set_admissible(w, std::vector<Index>{0, 1, 2}, v);
  return w;
}

// y with yᵀ·δ¹ = 0 and yᵀ·(ω − ω′) = 1 on raw coordinates.
void expect_certificate(const CompatiblePair& p, const CompatibleRepresentation& r, const PreCochain& a1,
                        const PreCochain& a2, const Vector& y) {
  const Matrix d1 = bicomplex_matrix(p, r, 1, false);
  EXPECT_TRUE(is_zero(d1.transpose() * y));
  Vector b = cochain_coordinates(a1, false), b2 = cochain_coordinates(a2, false);
  b.insert(b.end(), b2.begin(), b2.end());
  ASSERT_EQ(b.size(), y.size());
  Scalar dot = 0;
  for (std::size_t i = 0; i < b.size(); ++i) dot += y[i] * b[i];
  EXPECT_EQ(dot, 1);
}

// [x+u, y+v, z+w] from the transfer formula, split vectors of length d+m.
Vector transfer_formula(const PreCochain& pi, const Representation& rho, const PreCochain& omega, const Vector& X,
                        const Vector& Y, const Vector& Z) {
  const std::size_t d = pi.dim();
  auto g = [&](const Vector& v) { return Vector(v.begin(), v.begin() + d); };
  auto V = [&](const Vector& v) { return Vector(v.begin() + d, v.end()); };
  Vector top = eval_naive(pi, {g(X), g(Y), g(Z)});
  Vector bottom = eval_naive(omega, {g(X), g(Y), g(Z)});
  bottom = add(bottom, rho.rho(g(X), g(Y)) * V(Z));
  bottom = add(bottom, rho.rho(g(Y), g(Z)) * V(X));
  bottom = add(bottom, rho.rho(g(Z), g(X)) * V(Y));
  top.insert(top.end(), bottom.begin(), bottom.end());
  return top;
}

}  // namespace

TEST(Extension, TransferredBracketMatchesFormula) {
  gen::Rng rng(51);
  const auto p = gen::sample_pair();
  const auto rep = gen::sub_adjoint(p, 3);
  const auto [w1, w2] = delta1(p, rep, gen::random_matrix(3, 4, rng));
  const auto total = transferred_pair(p, rep, w1, w2);
  for (Index a = 0; a < 7; ++a)
    for (Index b = 0; b < 7; ++b)
      for (Index c = 0; c < 7; ++c) {
        EXPECT_EQ(total.pi1.eval(std::vector<Index>{a, b, c}),
                  transfer_formula(p.pi1, rep.rho, w1, e(7, a), e(7, b), e(7, c)));
        EXPECT_EQ(total.pi2.eval(std::vector<Index>{a, b, c}),
                  transfer_formula(p.pi2, rep.mu, w2, e(7, a), e(7, b), e(7, c)));
      }
  EXPECT_TRUE(is_abelian_extension(total, 4));
}

TEST(Extension, BuildAcceptsCocyclesOnly) {
  const auto p = gen::sample_pair();
  const auto rep = gen::sub_adjoint(p, 3);
  const auto zero = build_extension(p, rep, PreCochain(1, 4, 3), PreCochain(1, 4, 3));
  ASSERT_TRUE(zero.extension);
  EXPECT_TRUE(zero.total_compatible);
  EXPECT_TRUE(compatible_by_polarization(zero.extension->total));
  EXPECT_EQ(zero.extension->total, semidirect_compatible(p, rep));
  // first basis cochain that is not a cocycle, with ω₂ = 0
  for (const auto& w : admissible_basis(1, 4, 3)) {
    const auto b = build_extension(p, rep, w, PreCochain(1, 4, 3));
    EXPECT_EQ(b.cocycle, b.total_compatible);
    if (!b.cocycle) {
      EXPECT_FALSE(compatible_by_polarization(transferred_pair(p, rep, w, PreCochain(1, 4, 3))));
      EXPECT_FALSE(b.extension);
      return;
    }
  }
  FAIL() << "every basis cochain was a cocycle";
}

TEST(Extension, BuildRejectsInvalidRepresentation) {
  const auto p = gen::sample_pair();
  const CompatibleRepresentation bad{Representation::adjoint(p.pi1), Representation::zero(4, 4)};
  EXPECT_THROW(build_extension(p, bad, PreCochain(1, 4, 4), PreCochain(1, 4, 4)), PreconditionError);
}

TEST(Extension, CanonicalSectionRoundTrip) {
  gen::Rng rng(52);
  const auto p = gen::sample_pair();
  const auto rep = gen::sub_adjoint(p, 3);
  for (int i = 0; i < 3; ++i) {
    const auto [w1, w2] = delta1(p, rep, gen::random_matrix(3, 4, rng));
    const auto b = build_extension(p, rep, w1, w2);
    ASSERT_TRUE(b.extension);
    const auto [e1, e2] = extract_cocycle(*b.extension, canonical_section(4, 3));
    EXPECT_EQ(e1, w1);
    EXPECT_EQ(e2, w2);
    EXPECT_EQ(induced_representation(b.extension->total, 4, canonical_section(4, 3)), rep);
  }
}

TEST(Extension, SectionShiftAddsDeltaTau) {
  gen::Rng rng(53);
  const auto p = gen::sample_pair();
  const auto rep = gen::sub_adjoint(p, 3);
  const auto b = build_extension(p, rep, PreCochain(1, 4, 3), PreCochain(1, 4, 3));
  ASSERT_TRUE(b.extension);
  for (int i = 0; i < 3; ++i) {
    const Matrix tau = gen::random_matrix(3, 4, rng);
    const auto [s1, s2] = extract_cocycle(*b.extension, shifted_section(tau));
    const auto [t1, t2] = delta1(p, rep, tau);
    EXPECT_EQ(s1, t1);
    EXPECT_EQ(s2, t2);
    EXPECT_EQ(induced_representation(b.extension->total, 4, shifted_section(tau)), rep);
  }
}

TEST(Extension, SectionChecks) {
  const auto p = gen::sample_pair();
  const auto rep = gen::sub_adjoint(p, 3);
  const auto total = semidirect_compatible(p, rep);
  Matrix bad = canonical_section(4, 3);
  bad.set(0, 1, 1);
  EXPECT_THROW(extract_cocycle(total, 4, bad), PreconditionError);
  EXPECT_THROW(extract_cocycle(total, 4, Matrix(7, 3)), DimensionError);
  // with V = span(e4) no bracket has two arguments in V
  EXPECT_TRUE(is_abelian_extension(p, 3));
}

TEST(Classification, CohomologousExtensionsAreIsomorphic) {
  gen::Rng rng(54);
  const auto p = gen::sample_pair();
  const auto rep = gen::sub_adjoint(p, 3);
  const auto zero = build_extension(p, rep, PreCochain(1, 4, 3), PreCochain(1, 4, 3));
  const auto [w1, w2] = delta1(p, rep, gen::random_matrix(3, 4, rng));
  const auto cob = build_extension(p, rep, w1, w2);
  const auto r = classify(*cob.extension, *zero.extension);
  ASSERT_TRUE(r.isomorphic);
  ASSERT_TRUE(r.theta && r.tau);
  EXPECT_FALSE(r.certificate);
  // θ checked against both brackets by naive evaluation
  const Matrix& th = *r.theta;
  for (int i = 0; i < 2; ++i)
    for (Index a = 0; a < 7; ++a)
      for (Index b = a + 1; b < 7; ++b)
        for (Index c = b + 1; c < 7; ++c) {
          const Vector lhs = th * eval_naive(cob.extension->total.bracket(i), {e(7, a), e(7, b), e(7, c)});
          const Vector rhs = eval_naive(zero.extension->total.bracket(i), {th * e(7, a), th * e(7, b), th * e(7, c)});
          EXPECT_EQ(lhs, rhs);
        }
  const auto [t1, t2] = delta1(p, rep, *r.tau);
  EXPECT_EQ(t1, w1);
  EXPECT_EQ(t2, w2);
}

TEST(Classification, AbelianBaseZeroRepFamilyHasCertificates) {
  const auto base = abelian_pair(3);
  const auto rep = CompatibleRepresentation::zero(3, 1);
  const auto zero = build_extension(base, rep, PreCochain(1, 3, 1), PreCochain(1, 3, 1));
  for (int k = 1; k <= 3; ++k) {
    const PreCochain w1 = top_form(3, 1, k), w2 = top_form(3, 1, k % 2 ? 0 : 1);
    const auto ext = build_extension(base, rep, w1, w2);
    ASSERT_TRUE(ext.extension);
    const auto r = classify(*ext.extension, *zero.extension);
    EXPECT_FALSE(r.isomorphic);
    ASSERT_TRUE(r.certificate);
    expect_certificate(base, rep, w1, w2, *r.certificate);
  }
}

TEST(Classification, DifferentBasesAreRejected) {
  const auto p = gen::sample_pair();
  const auto rep = gen::sub_adjoint(p, 3);
  const auto a = build_extension(p, rep, PreCochain(1, 4, 3), PreCochain(1, 4, 3));
  const auto q = abelian_pair(4);
  const auto b = build_extension(q, CompatibleRepresentation::zero(4, 3), PreCochain(1, 4, 3), PreCochain(1, 4, 3));
  EXPECT_THROW(classify(*a.extension, *b.extension), PreconditionError);
}
