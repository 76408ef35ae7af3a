#ifndef TRILIE_SELFTEST_HPP
#define TRILIE_SELFTEST_HPP

// Seeded property suite behind the `selftest` verb.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "extensions.hpp"
#include "generators.hpp"

namespace trilie {

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;  // first failure, or the exception message
};

namespace detail {

inline PropertyResult run_property(const std::string& name, const std::function<std::string()>& body) {
  try {
    std::string failure = body();
    return {name, failure.empty(), failure};
  } catch (const std::exception& e) {
    return {name, false, e.what()};
  }
}

inline Scalar graded_sign(std::size_t a, std::size_t b) { return Scalar(parity_sign(a * b)); }

}  // namespace detail

inline std::vector<PropertyResult> run_selftest(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  const CompatiblePair sample = gen::sample_pair();

  out.push_back(detail::run_property("graded_antisymmetry", [&]() -> std::string {
    gen::Rng rng(seed);
    for (int i = 0; i < 12; ++i) {
      const std::size_t wp = i % 3, wq = (i / 3) % 3;
      PreCochain P = gen::random_precochain(wp, 3, 3, rng), Q = gen::random_precochain(wq, 3, 3, rng);
      if (!(nr_bracket(P, Q) == Scalar(-1) * detail::graded_sign(wp, wq) * nr_bracket(Q, P)))
        return "weights " + std::to_string(wp) + "," + std::to_string(wq);
    }
    return {};
  }));

  out.push_back(detail::run_property("graded_jacobi", [&]() -> std::string {
    gen::Rng rng(seed + 1);
    const std::size_t weights[][3] = {{0, 0, 1}, {1, 1, 0}, {1, 1, 1}, {2, 1, 0}, {0, 2, 1}, {1, 1, 2}};
    for (const auto& w : weights) {
      PreCochain P = gen::random_precochain(w[0], 3, 3, rng), Q = gen::random_precochain(w[1], 3, 3, rng),
                 R = gen::random_precochain(w[2], 3, 3, rng);
      PreCochain sum = detail::graded_sign(w[0], w[2]) * nr_bracket(nr_bracket(P, Q), R);
      sum += detail::graded_sign(w[1], w[0]) * nr_bracket(nr_bracket(Q, R), P);
      sum += detail::graded_sign(w[2], w[1]) * nr_bracket(nr_bracket(R, P), Q);
      if (!sum.is_zero())
        return "weights " + std::to_string(w[0]) + "," + std::to_string(w[1]) + "," + std::to_string(w[2]);
    }
    return {};
  }));

  out.push_back(detail::run_property("fi_equivalence", [&]() -> std::string {
    gen::Rng rng(seed + 2);
    std::vector<PreCochain> candidates = {gen::fi_violating_bracket(), sample.pi1, sample.pi2};
    for (int i = 0; i < 30; ++i) candidates.push_back(gen::random_skew_bracket(3 + i % 2, rng));
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (validate_fi(candidates[i]).holds != validate_fi_via_mc(candidates[i])) return "candidate " + std::to_string(i);
    return {};
  }));

  out.push_back(detail::run_property("complex_laws", [&]() -> std::string {
    const auto ad = Representation::adjoint(sample.pi1);
    for (const Representation& r : {ad, dual_representation(ad)})
      for (std::size_t n = 1; n <= 2; ++n)
        if (!(coboundary_matrix(sample.pi1, r, n + 1, true) * coboundary_matrix(sample.pi1, r, n, true)).is_zero())
          return "d∘d at CE-degree " + std::to_string(n);
    for (const Coefficients& c : {Coefficients{}, Coefficients{gen::sub_adjoint(sample, 3)}})
      for (std::size_t n = 1; n <= 2; ++n)
        if (!(bicomplex_matrix(sample, c, n + 1, true) * bicomplex_matrix(sample, c, n, true)).is_zero())
          return "δ∘δ at CE-degree " + std::to_string(n);
    return {};
  }));

  out.push_back(detail::run_property("compatibility_equivalence", [&]() -> std::string {
    gen::Rng rng(seed + 3);
    std::vector<CompatiblePair> pairs = {sample, CompatiblePair(gen::fi_violating_bracket(), PreCochain(1, 4, 4))};
    for (int i = 0; i < 6; ++i) pairs.push_back(gen::random_compatible_pair(3 + i % 2, rng));
    for (int i = 0; i < 6; ++i)
      pairs.emplace_back(gen::random_skew_bracket(4, rng, 0.2), gen::random_skew_bracket(4, rng, 0.2));
    for (const auto& p : pairs) validate_compatible(p);  // throws on disagreement
    return {};
  }));

  out.push_back(detail::run_property("nijenhuis_closure", [&]() -> std::string {
    auto ops = gen::find_nijenhuis(sample, 3, seed + 4);
    ops.push_back(Matrix::identity(4));
    ops.push_back(Matrix(4, 4));
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const DeformationData d = trivial_deformation_from_nijenhuis(sample, ops[i]);
      if (!order2_check(sample, d).holds()) return "order-2 equations, operator " + std::to_string(i);
      if (!triviality_check(sample, d, ops[i]).trivial()) return "triviality equations, operator " + std::to_string(i);
      if (!deformed_compatible_pair(sample, ops[i]).compatible) return "deformed pair, operator " + std::to_string(i);
    }
    return {};
  }));

  out.push_back(detail::run_property("extension_round_trip", [&]() -> std::string {
    gen::Rng rng(seed + 5);
    const auto rep = gen::sub_adjoint(sample, 3);
    const Matrix tau0 = gen::random_matrix(3, 4, rng);
    const auto [w1, w2] = delta1(sample, rep, tau0);
    const auto built = build_extension(sample, rep, w1, w2);
    if (!built.extension) return "coboundary pair rejected";
    const auto [e1, e2] = extract_cocycle(*built.extension, canonical_section(4, 3));
    if (!(e1 == w1) || !(e2 == w2)) return "canonical section round trip";
    const Matrix tau = gen::random_matrix(3, 4, rng);
    const auto [s1, s2] = extract_cocycle(*built.extension, shifted_section(tau));
    const auto [t1, t2] = delta1(sample, rep, tau);
    if (!(s1 - e1 == t1) || !(s2 - e2 == t2)) return "section shift";
    if (!(induced_representation(built.extension->total, 4, shifted_section(tau)) == rep)) return "induced representation";
    const auto zero = build_extension(sample, rep, PreCochain(1, 4, 3), PreCochain(1, 4, 3));
    if (!classify(*built.extension, *zero.extension).isomorphic) return "classification of a coboundary";
    return {};
  }));

  out.push_back(detail::run_property("bidegree_additivity", [&]() -> std::string {
    gen::Rng rng(seed + 6);
    const Split s{3, 2};
    const CompatiblePair p = gen::random_compatible_pair(3, rng);
    const PreCochain pihat = lift_bracket(p.pi1, 2);
    const PreCochain fhat = lift_cochain(gen::random_cochain(1, 3, 2, rng), 3);
    for (const auto& [a, b] : {std::pair{&pihat, &fhat}, std::pair{&fhat, &pihat}, std::pair{&pihat, &pihat}}) {
      auto ba = bidegree(*a, s), bb = bidegree(*b, s);
      auto bc = bidegree(nr_bracket(*a, *b), s);
      if (ba && bb && bc && (bc->l != ba->l + bb->l || bc->k != ba->k + bb->k)) return "bidegree not additive";
    }
    return {};
  }));
  return out;
}

}  // namespace trilie

#endif  // TRILIE_SELFTEST_HPP
