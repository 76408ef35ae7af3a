#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "trilie/generators.hpp"
#include "trilie/multilinear.hpp"

using namespace trilie;

namespace {

struct Perm {
  std::vector<int> p;  // 0-based images
  int sign;
};

// Shuffles of (a, b) by brute force over all permutations.
std::vector<Perm> brute_shuffles(int a, int b) {
  std::vector<int> p(a + b);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do {
    bool ok = std::is_sorted(p.begin(), p.begin() + a) && std::is_sorted(p.begin() + a, p.end());
    if (!ok) continue;
    int inv = 0;
    for (int i = 0; i < a + b; ++i)
      for (int j = i + 1; j < a + b; ++j) inv += p[i] > p[j];
    out.push_back({p, inv % 2 ? -1 : 1});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Evaluates a pre-cochain where at most one argument is a general vector.
Vector eval_one_vector(const PreCochain& c, std::vector<Index> args, std::size_t slot, const Vector& v) {
  Vector out(c.target_dim());
  for (std::size_t s = 0; s < v.size(); ++s) {
    if (v[s] == 0) continue;
    args[slot] = static_cast<Index>(s);
    Vector r = c.eval(args);
    for (std::size_t t = 0; t < out.size(); ++t) out[t] += v[s] * r[t];
  }
  return out;
}

// Term-by-term evaluation of the circle-product display at basis arguments
// (x_1, y_1, …, x_{p+q}, y_{p+q}, x).
Vector circ_oracle(const PreCochain& P, const PreCochain& Q, const std::vector<Index>& args) {
  const int p = static_cast<int>(P.weight()), q = static_cast<int>(Q.weight());
  const std::size_t d = P.dim();
  auto X = [&](int i, int member) { return args[2 * i + member]; };  // 0-based pair i
  const Index x = args[2 * (p + q)];
  Vector out(d);
  auto acc = [&](const Vector& v, int sign) {
    for (std::size_t t = 0; t < d; ++t) out[t] += sign * v[t];
  };
  for (int k = 1; k <= p; ++k) {
    const int pre = ((k - 1) * q) % 2 ? -1 : 1;
    for (const auto& s : brute_shuffles(k - 1, q)) {
      for (int member = 0; member < 2; ++member) {
        // Q(X_σ(k..k+q−1), x_{k+q} or y_{k+q})
        std::vector<Index> qa;
        for (int i = k - 1; i < k + q - 1; ++i) {
          qa.push_back(X(s.p[i], 0));
          qa.push_back(X(s.p[i], 1));
        }
        qa.push_back(X(k + q - 1, member));
        Vector qv = Q.eval(qa);
        std::vector<Index> pa;
        for (int i = 0; i < k - 1; ++i) {
          pa.push_back(X(s.p[i], 0));
          pa.push_back(X(s.p[i], 1));
        }
        const std::size_t slot = pa.size() + member;
        pa.push_back(member == 0 ? 0 : X(k + q - 1, 0));
        pa.push_back(member == 0 ? X(k + q - 1, 1) : 0);
        for (int i = k + q; i < p + q; ++i) {
          pa.push_back(X(i, 0));
          pa.push_back(X(i, 1));
        }
        pa.push_back(x);
        acc(eval_one_vector(P, pa, slot, qv), pre * s.sign);
      }
    }
  }
  const int pre = (p * q) % 2 ? -1 : 1;
  for (const auto& s : brute_shuffles(p, q)) {
    std::vector<Index> qa;
    for (int i = p; i < p + q; ++i) {
      qa.push_back(X(s.p[i], 0));
      qa.push_back(X(s.p[i], 1));
    }
    qa.push_back(x);
    Vector qv = Q.eval(qa);
    std::vector<Index> pa;
    for (int i = 0; i < p; ++i) {
      pa.push_back(X(s.p[i], 0));
      pa.push_back(X(s.p[i], 1));
    }
    pa.push_back(0);
    acc(eval_one_vector(P, pa, pa.size() - 1, qv), pre * s.sign);
  }
  return out;
}

PreCochain identity_cochain(std::size_t d) { return endomorphism_cochain(Matrix::identity(d)); }

}  // namespace

TEST(Eval, SkewWithinPairsAndAdmissibleTriple) {
  PreCochain c(1, 4, 4);
  Vector v = {1, 2, 0, 0};
  set_admissible(c, std::vector<Index>{0, 1, 2}, v);
  Vector neg = {-1, -2, 0, 0};
  EXPECT_EQ(c.eval(std::vector<Index>{1, 0, 2}), neg);
  EXPECT_TRUE(is_zero(c.eval(std::vector<Index>{0, 0, 2})));
  EXPECT_EQ(c.eval(std::vector<Index>{2, 1, 0}), neg);
  EXPECT_EQ(c.eval(std::vector<Index>{1, 2, 0}), v);
  EXPECT_THROW(c.eval(std::vector<Index>{0, 1, 4}), DimensionError);
}

TEST(Shuffles, MatchBruteForce) {
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) {
      auto ours = shuffles(a, b);
      auto ref = brute_shuffles(a, b);
      ASSERT_EQ(ours.size(), ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i) {
        bool found = false;
        for (const auto& s : ours) {
          std::vector<int> perm(s.perm.begin(), s.perm.end());
          if (perm == ref[i].p) {
            found = true;
            EXPECT_EQ(s.sign, ref[i].sign);
          }
        }
        EXPECT_TRUE(found);
      }
    }
}

TEST(Circ, MatchesDisplayOracle) {
  gen::Rng rng(21);
  const std::pair<int, int> weights[] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 1}, {1, 2}, {2, 0}, {0, 2}};
  for (auto [wp, wq] : weights) {
    PreCochain P = gen::random_precochain(wp, 3, 3, rng), Q = gen::random_precochain(wq, 3, 3, rng);
    PreCochain C = circ(P, Q);
    const std::size_t w = wp + wq;
    for (Key k = 0; k < raw_key_count(w, 3); ++k) {
      auto args = decode_key(k, w, 3);
      ASSERT_EQ(C.eval(args), circ_oracle(P, Q, args)) << "weights " << wp << "," << wq << " key " << k;
    }
  }
}

TEST(Circ, SampleBracketWithItself) {
  const PreCochain pi = gen::sample_pair().pi1;
  std::vector<Index> args = {0, 1, 0, 1, 2};
  EXPECT_EQ(circ(pi, pi).eval(args), circ_oracle(pi, pi, args));
  // By the display: the third sum gives [e1,e2,[e1,e2,e3]] − [e1,e2,[e1,e2,e3]] and
  // the substitution sums give [[e1,e2,e1],e2,e3]-type terms, all zero here.
  EXPECT_EQ(circ(pi, pi).eval(args), Vector(4));
}

TEST(Circ, IdentityAndWeightZero) {
  gen::Rng rng(22);
  PreCochain pi = gen::random_skew_bracket(3, rng, 0.6);
  EXPECT_EQ(circ(pi, identity_cochain(3)), Scalar(3) * pi);
  Matrix f = gen::random_matrix(3, 3, rng);
  PreCochain fc = endomorphism_cochain(f);
  PreCochain fpi = circ(fc, pi);
  for (Index a = 0; a < 3; ++a)
    for (Index b = a + 1; b < 3; ++b)
      for (Index c = 0; c < 3; ++c) {
        std::vector<Index> args = {a, b, c};
        EXPECT_EQ(fpi.eval(args), f * pi.eval(args));
      }
}

TEST(Bracket, IdentityGivesTwiceBracket) {
  gen::Rng rng(23);
  PreCochain pi = gen::random_skew_bracket(4, rng, 0.5);
  EXPECT_EQ(nr_bracket(pi, identity_cochain(4)), Scalar(2) * pi);
}

TEST(Bracket, SamplePairMaurerCartan) {
  const auto p = gen::sample_pair();
  EXPECT_TRUE(nr_bracket(p.pi1, p.pi1).is_zero());
  EXPECT_TRUE(nr_bracket(p.pi2, p.pi2).is_zero());
  EXPECT_TRUE(nr_bracket(p.pi1, p.pi2).is_zero());
}

TEST(Bracket, GradedAntisymmetry) {
  gen::Rng rng(24);
  for (int wp = 0; wp <= 2; ++wp)
    for (int wq = 0; wq <= 2; ++wq) {
      PreCochain P = gen::random_precochain(wp, 3, 3, rng), Q = gen::random_precochain(wq, 3, 3, rng);
      const Scalar s = (wp * wq) % 2 ? 1 : -1;
      EXPECT_EQ(nr_bracket(P, Q), s * nr_bracket(Q, P)) << wp << "," << wq;
    }
}

TEST(Bracket, GradedJacobi) {
  gen::Rng rng(25);
  const int weights[][3] = {{0, 0, 0}, {0, 1, 1}, {1, 1, 1}, {2, 1, 1}, {1, 2, 0}, {2, 2, 0}, {0, 0, 2}};
  for (const auto& w : weights) {
    PreCochain P = gen::random_precochain(w[0], 3, 3, rng), Q = gen::random_precochain(w[1], 3, 3, rng),
               R = gen::random_precochain(w[2], 3, 3, rng);
    auto sg = [](int a, int b) { return Scalar((a * b) % 2 ? -1 : 1); };
    PreCochain sum = sg(w[0], w[2]) * nr_bracket(nr_bracket(P, Q), R);
    sum += sg(w[1], w[0]) * nr_bracket(nr_bracket(Q, R), P);
    sum += sg(w[2], w[1]) * nr_bracket(nr_bracket(R, P), Q);
    EXPECT_TRUE(sum.is_zero()) << w[0] << w[1] << w[2];
  }
}

TEST(Bracket, ClosureOnAdmissibleCochains) {
  gen::Rng rng(26);
  for (int wp = 0; wp <= 2; ++wp)
    for (int wq = 0; wq <= 2 - (wp == 2); ++wq) {
      PreCochain P = gen::random_cochain(wp, 4, 4, rng), Q = gen::random_cochain(wq, 4, 4, rng);
      EXPECT_TRUE(is_admissible(nr_bracket(P, Q)).admissible) << wp << "," << wq;
    }
}

TEST(Admissible, DetectsViolationAndCountsBasis) {
  EXPECT_TRUE(is_admissible(endomorphism_cochain(Matrix::identity(3))).admissible);
  EXPECT_TRUE(is_admissible(gen::sample_pair().pi1).admissible);
  PreCochain c(1, 4, 4);
  c.set(std::vector<Index>{0, 1, 2}, Vector{1, 0, 0, 0});
  EXPECT_FALSE(is_admissible(c).admissible);
  EXPECT_EQ(admissible_basis(1, 4, 4).size(), 16u);
  EXPECT_EQ(admissible_basis(2, 4, 4).size(), 96u);
  EXPECT_EQ(admissible_basis(0, 3, 3).size(), 9u);
  for (const auto& b : admissible_basis(2, 4, 2)) EXPECT_TRUE(is_admissible(b).admissible);
}

TEST(Coordinates, RoundTrip) {
  gen::Rng rng(27);
  for (std::size_t w = 0; w <= 2; ++w) {
    PreCochain c = gen::random_cochain(w, 4, 3, rng);
    EXPECT_EQ(cochain_from_coordinates(cochain_coordinates(c, true), w, 4, 3, true), c);
    PreCochain r = gen::random_precochain(w, 4, 3, rng);
    EXPECT_EQ(cochain_from_coordinates(cochain_coordinates(r, false), w, 4, 3, false), r);
  }
}

TEST(Lift, BracketAndRepresentation) {
  const auto p = gen::sample_pair();
  EXPECT_EQ(lift_bracket(p.pi1, 0), p.pi1);
  const auto rep = gen::sub_adjoint(p, 3);
  const PreCochain rhat = lift_representation(rep.rho);
  // ρ̂(e1, e2, u) = ρ(e1, e2)u
  for (Index s = 0; s < 3; ++s) {
    Vector got = rhat.eval(std::vector<Index>{0, 1, static_cast<Index>(4 + s)});
    Vector want = rep.rho.rho(0, 1) * Vector(unit_vector(3, s));
    for (std::size_t t = 0; t < 4; ++t) EXPECT_EQ(got[t], 0);
    for (std::size_t t = 0; t < 3; ++t) EXPECT_EQ(got[4 + t], want[t]);
  }
  EXPECT_TRUE(is_zero(rhat.eval(std::vector<Index>{4, 5, 6})));
}

TEST(Bidegree, LiftsAndAdditivity) {
  gen::Rng rng(28);
  const Split s{3, 2};
  const auto p = gen::random_compatible_pair(3, rng);
  const PreCochain pihat = lift_bracket(p.pi1, 2);
  Representation r(3, 2);
  r.set(0, 1, gen::random_matrix(2, 2, rng, 1.0));
  const PreCochain rhohat = lift_representation(r);
  EXPECT_EQ(bidegree(pihat, s), (Bidegree{2, 0}));
  EXPECT_EQ(bidegree(rhohat, s), (Bidegree{2, 0}));
  // a lift of a V-valued weight-w cochain has bidegree (2w+1)|−1
  for (std::size_t w = 0; w <= 2; ++w) {
    PreCochain f = gen::random_cochain(w, 3, 2, rng, 0.8);
    EXPECT_EQ(bidegree(lift_cochain(f, 3), s), (Bidegree{static_cast<int>(2 * w + 1), -1}));
  }
  const PreCochain fhat = lift_cochain(gen::random_cochain(1, 3, 2, rng, 0.8), 3);
  const PreCochain ghat = lift_cochain(gen::random_cochain(0, 3, 2, rng, 0.8), 3);
  const PreCochain both = pihat + rhohat;
  for (const PreCochain* a : {&both, &fhat})
    for (const PreCochain* b : {&fhat, &ghat, &both}) {
      auto ba = bidegree(*a, s), bb = bidegree(*b, s);
      ASSERT_TRUE(ba && bb);
      PreCochain c = nr_bracket(*a, *b);
      EXPECT_TRUE(has_bidegree(c, s, ba->l + bb->l, ba->k + bb->k));
    }
}
