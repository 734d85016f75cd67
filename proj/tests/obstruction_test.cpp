#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "solrig/errors.hpp"
#include "solrig/moments.hpp"
#include "solrig/obstruction.hpp"
#include "support.hpp"

using namespace solrig;

TEST(GramTensor, ProjectivePlaneMatchesUnitaryMoments) {
  const auto basis = build_E2mu(ManifoldDescriptor::projective(2));
  const auto t = gram_tensor(basis);
  ASSERT_EQ(t.dimension(), 8u);
  EXPECT_EQ(t.entries().size(), 120u);
  std::vector<testkit::Matrix> mats;
  for (const auto& el : basis.elements()) mats.push_back(testkit::form_matrix(*el.form));
  for (std::size_t a = 0; a < 8; ++a) {
    for (std::size_t b = a; b < 8; ++b) {
      for (std::size_t c = b; c < 8; ++c) {
        EXPECT_EQ(GaussianRational(t.at(a, b, c)), testkit::wick_cubic(mats[a], mats[b], mats[c], 3))
            << basis.element(a).id << basis.element(b).id << basis.element(c).id;
      }
    }
  }
}

TEST(GramTensor, ProjectiveThreeSpotChecksAgainstUnitaryMoments) {
  const auto basis = build_E2mu(ManifoldDescriptor::projective(3));
  const auto t = gram_tensor(basis);
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  for (int trial = 0; trial < 120; ++trial) {
    const auto a = pick(rng), b = pick(rng), c = pick(rng);
    const auto want = testkit::wick_cubic(testkit::form_matrix(*basis.element(a).form),
                                          testkit::form_matrix(*basis.element(b).form),
                                          testkit::form_matrix(*basis.element(c).form), 4);
    EXPECT_EQ(GaussianRational(t.at(a, b, c)), want);
  }
}

TEST(GramTensor, SymmetricAndContractsLikeIntegral) {
  const auto basis = build_E2mu(ManifoldDescriptor::projective(2));
  const auto t = gram_tensor(basis);
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Rational> u(8), v(8), w(8);
    for (std::size_t i = 0; i < 8; ++i) {
      u[i] = testkit::random_rational(rng);
      v[i] = testkit::random_rational(rng);
      w[i] = testkit::random_rational(rng);
    }
    const auto direct = integrate_product(basis.combine(u) * basis.combine(v) * basis.combine(w));
    EXPECT_EQ(t.contract(u, v, w), direct);
    EXPECT_EQ(t.contract(w, u, v), direct);
    EXPECT_EQ(t.contract(v, w, u), direct);
  }
  EXPECT_EQ(t.at(1, 0, 2), t.at(2, 1, 0));
}

TEST(GramTensor, SpherePairVanishes) {
  const auto basis = build_E2mu(parse_manifold("S2xS2"));
  const auto t = gram_tensor(basis);
  EXPECT_EQ(t.entries().size(), 56u);
  EXPECT_TRUE(t.is_zero());
  EXPECT_TRUE(gram_tensor(build_E2mu(parse_manifold("S2"))).is_zero());
}

TEST(GramTensor, IndexIsABijection) {
  const std::size_t d = 7;
  std::vector<int> seen(CubicGramTensor::independent_entries(d), 0);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      for (std::size_t c = b; c < d; ++c) ++seen.at(CubicGramTensor::index(a, b, c));
    }
  }
  EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int n) { return n == 1; }));
}

TEST(ObstructionCheck, GoldenValues) {
  const auto basis = build_E2mu(ManifoldDescriptor::projective(2));
  const auto t = gram_tensor(basis);
  const auto w = basis.diagonal_coordinates(0, std::vector<Rational>{1, 1, -2});
  const auto v = basis.diagonal_coordinates(0, std::vector<Rational>{1, -1, 0});
  EXPECT_EQ(t.contract(w, w, w), Rational(-1, 5));
  EXPECT_EQ(t.contract(v, v, w), Rational(1, 15));

  const auto verdict = obstruction_check(v, t);
  EXPECT_EQ(verdict.status, ObstructionStatus::Obstructed);
  ASSERT_TRUE(verdict.witness_index.has_value());
  EXPECT_EQ(basis.element(*verdict.witness_index).function,
            diagonal_form(basis.layout(), std::vector<Rational>{1, 1, -2}));
  EXPECT_EQ(verdict.value, Rational(1, 15));

  const auto self = obstruction_check(w, basis);
  EXPECT_EQ(self.status, ObstructionStatus::Obstructed);
  EXPECT_EQ(self.value, Rational(-1, 5));
}

TEST(ObstructionCheck, TensorAndBasisPathsAgree) {
  std::mt19937_64 rng(59);
  for (unsigned m : {2u, 3u}) {
    const auto basis = build_E2mu(ManifoldDescriptor::projective(m));
    const auto t = gram_tensor(basis);
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<Rational> v(basis.size());
      for (auto& x : v) x = testkit::random_rational(rng);
      const auto a = obstruction_check(v, t);
      const auto b = obstruction_check(v, basis);
      EXPECT_EQ(a.pairings, b.pairings);
      EXPECT_EQ(a.status, b.status);
      EXPECT_EQ(a.witness_index, b.witness_index);
    }
  }
}

TEST(ObstructionCheck, Errors) {
  const auto basis = build_E2mu(ManifoldDescriptor::projective(2));
  EXPECT_THROW(obstruction_check(std::vector<Rational>(8, 0), basis), std::invalid_argument);
  EXPECT_THROW(obstruction_check(std::vector<Rational>(3, 1), basis), DimensionMismatch);
}

TEST(DiagonalCriterion, Examples) {
  const auto a = diagonal_criterion(std::vector<Rational>{1, 1, -2}, 2);
  EXPECT_EQ(a.status, ObstructionStatus::Obstructed);
  EXPECT_EQ(a.value, Rational(-1, 5));
  EXPECT_EQ(a.witness_lambda, (std::vector<Rational>{1, 1, -2}));

  const auto b = diagonal_criterion(std::vector<Rational>{1, 1, -1, -1}, 3);
  EXPECT_EQ(b.status, ObstructionStatus::UnobstructedAtOrder2);
  EXPECT_EQ(b.value, Rational(0));

  // ∫v³ = 0 here, so the witness is the H_{1,1} part of v².
  const auto c = diagonal_criterion(std::vector<Rational>{1, -1, 0}, 2);
  EXPECT_EQ(c.status, ObstructionStatus::Obstructed);
  EXPECT_NE(sgn(c.value), 0);

  EXPECT_THROW(diagonal_criterion(std::vector<Rational>{1, -1}, 2), std::invalid_argument);
  EXPECT_THROW(diagonal_criterion(std::vector<Rational>{1, 1, 1}, 2), std::invalid_argument);
  EXPECT_THROW(diagonal_criterion(std::vector<Rational>{0, 0, 0}, 2), std::invalid_argument);
}

// The diagonal shortcut must agree with the full pairing against every
// basis element.
TEST(DiagonalCriterion, AgreesWithFullBasisCheck) {
  std::mt19937_64 rng(61);
  for (unsigned m = 1; m <= 4; ++m) {
    const auto basis = build_E2mu(ManifoldDescriptor::projective(m));
    const auto t = gram_tensor(basis);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<Rational> lambda = testkit::random_traceless(rng, m + 1);
      if (trial % 5 == 0 && (m + 1) % 2 == 0) {
        // balanced signs
        for (unsigned i = 0; i <= m; ++i) lambda[i] = i % 2 ? -1 : 1;
        std::shuffle(lambda.begin(), lambda.end(), rng);
      }
      const auto diag = diagonal_criterion(lambda, m);
      const auto full = obstruction_check(basis.diagonal_coordinates(0, lambda), t);
      EXPECT_EQ(diag.status, full.status) << "CP" << m;
      if (diag.status == ObstructionStatus::Obstructed) {
        const auto w = diagonal_form(basis.layout(), diag.witness_lambda);
        const auto v = diagonal_form(basis.layout(), lambda);
        EXPECT_EQ(integrate_product(v * v * w), diag.value);
      }
    }
  }
}

TEST(DiagonalCriterion, PermutationAndScaling) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 40; ++trial) {
    const unsigned m = 2 + trial % 3;
    auto lambda = testkit::random_traceless(rng, m + 1);
    const auto base = diagonal_criterion(lambda, m);
    auto perm = lambda;
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_EQ(diagonal_criterion(perm, m).status, base.status);
    std::vector<Rational> neg;
    for (const auto& l : lambda) neg.push_back(-l);
    const auto n = diagonal_criterion(neg, m);
    EXPECT_EQ(n.status, base.status);
    // ∫v²w is even in v; the self-witness flips sign with v.
    const auto w = diagonal_form(Layout::complex(m + 1), base.witness_lambda);
    const auto vn = diagonal_form(Layout::complex(m + 1), neg);
    if (base.status == ObstructionStatus::Obstructed) EXPECT_EQ(integrate_sphere(vn * vn * w), base.value);
  }
}

TEST(KernelFamily, EvenAndOddProjective) {
  for (unsigned m : {2u, 4u, 6u}) {
    const auto k = kernel_family(ManifoldDescriptor::projective(m));
    EXPECT_EQ(k.kind, KernelKind::Empty) << m;
    EXPECT_TRUE(k.representative.empty());
  }
  for (unsigned m : {1u, 3u, 5u}) {
    const auto k = kernel_family(ManifoldDescriptor::projective(m));
    EXPECT_EQ(k.kind, KernelKind::Family) << m;
    ASSERT_EQ(k.representative_lambda.size(), m + 1);
    Rational sum = 0;
    for (const auto& l : k.representative_lambda) {
      EXPECT_EQ(l * l, Rational(1));
      sum += l;
    }
    EXPECT_EQ(sum, Rational(0));
  }
  const auto cp3 = kernel_family(ManifoldDescriptor::projective(3));
  EXPECT_EQ(cp3.representative_lambda, (std::vector<Rational>{1, 1, -1, -1}));
  const auto basis = build_E2mu(ManifoldDescriptor::projective(3));
  const auto verdict = obstruction_check(cp3.representative, basis);
  EXPECT_EQ(verdict.status, ObstructionStatus::UnobstructedAtOrder2);
  EXPECT_EQ(verdict.pairings.size(), 15u);
}

TEST(KernelFamily, SpheresAndProducts) {
  EXPECT_EQ(kernel_family(parse_manifold("S2")).kind, KernelKind::Full);
  EXPECT_EQ(kernel_family(parse_manifold("S2xS2")).kind, KernelKind::Full);
  const auto mixed = kernel_family(parse_manifold("S2xCP2"));
  EXPECT_EQ(mixed.kind, KernelKind::Family);
  const auto basis = build_E2mu(parse_manifold("S2xCP2"));
  EXPECT_EQ(obstruction_check(mixed.representative, basis).status, ObstructionStatus::UnobstructedAtOrder2);
  // a CP2 direction in the product is still obstructed
  std::vector<Rational> v(basis.size(), 0);
  v[3] = 1;
  EXPECT_EQ(obstruction_check(v, basis).status, ObstructionStatus::Obstructed);
  EXPECT_EQ(kernel_family(parse_manifold("S5")).kind, KernelKind::Empty);
}

TEST(Analyze, Verdicts) {
  const auto cp4 = analyze(ManifoldDescriptor::projective(4));
  EXPECT_EQ(cp4.verdict, GlobalVerdict::AllObstructed);
  EXPECT_TRUE(cp4.rigid);
  EXPECT_EQ(cp4.e2mu_dimension, 24u);
  EXPECT_EQ(cp4.isd_dimension, 24u);
  EXPECT_FALSE(cp4.isd_is_lower_bound);

  const auto cp3 = analyze(ManifoldDescriptor::projective(3));
  EXPECT_EQ(cp3.verdict, GlobalVerdict::KernelFamilyExists);
  EXPECT_FALSE(cp3.rigid);

  const auto s2s2 = analyze(parse_manifold("S2xS2"));
  EXPECT_EQ(s2s2.verdict, GlobalVerdict::AllUnobstructedAtOrder2);
  EXPECT_EQ(s2s2.e2mu_dimension, 6u);
  ASSERT_TRUE(s2s2.gram.has_value());
  EXPECT_EQ(s2s2.gram->nonzero_entries, 0u);

  const auto s4 = analyze(parse_manifold("S4"));
  EXPECT_EQ(s4.verdict, GlobalVerdict::NoConformalDeformations);
  EXPECT_EQ(s4.e2mu_dimension, 0u);
  EXPECT_FALSE(s4.citations.empty());
}

TEST(Analyze, SampledDeformationsMatchKernelKind) {
  for (const char* spec : {"CP2", "CP4", "S2xS2", "CP1"}) {
    const auto r = analyze(parse_manifold(spec));
    EXPECT_GT(r.sampled, 0u);
    if (r.kernel->kind == KernelKind::Full) EXPECT_EQ(r.sampled_obstructed, 0u) << spec;
    if (r.kernel->kind == KernelKind::Empty) EXPECT_EQ(r.sampled_obstructed, r.sampled) << spec;
  }
}

TEST(DiagonalCriterion, ProjectiveLine) {
  const auto v = diagonal_criterion(std::vector<Rational>{1, -1}, 1);
  EXPECT_EQ(v.status, ObstructionStatus::UnobstructedAtOrder2);
}

TEST(GramTensor, DiagonalAgainstOffDiagonalVanishes) {
  const auto basis = build_E2mu(ManifoldDescriptor::projective(2));
  const auto t = gram_tensor(basis);
  std::vector<std::size_t> diag, off;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    (basis.element(i).form->is_diagonal() ? diag : off).push_back(i);
  }
  ASSERT_EQ(diag.size(), 2u);
  ASSERT_EQ(off.size(), 6u);
  for (auto a : diag) {
    for (auto b : diag) {
      for (auto c : off) EXPECT_EQ(t.at(a, b, c), Rational(0)) << basis.element(c).id;
    }
  }
}

TEST(ObstructionCheck, SpherePairAlwaysUnobstructed) {
  const auto basis = build_E2mu(parse_manifold("S2xS2"));
  std::mt19937_64 rng(71);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::vector<Rational> v(basis.size(), 0);
    v[i] = 1;
    EXPECT_EQ(obstruction_check(v, basis).status, ObstructionStatus::UnobstructedAtOrder2);
  }
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Rational> v(basis.size());
    for (auto& x : v) x = testkit::random_rational(rng);
    if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; })) continue;
    EXPECT_EQ(obstruction_check(v, basis).status, ObstructionStatus::UnobstructedAtOrder2);
  }
}
