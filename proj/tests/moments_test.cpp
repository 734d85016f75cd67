#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "solrig/errors.hpp"
#include "solrig/moments.hpp"
#include "solrig/verify.hpp"
#include "support.hpp"

using namespace solrig;

namespace {
std::vector<unsigned> u(std::initializer_list<unsigned> v) { return v; }
}  // namespace

TEST(Moments, ComplexExamples) {
  EXPECT_EQ(complex_monomial_moment(2, u({1, 0}), u({1, 0})), Rational(1, 2));
  EXPECT_EQ(complex_monomial_moment(3, u({1, 1, 1}), u({1, 1, 1})), Rational(1, 60));
  EXPECT_EQ(complex_monomial_moment(3, u({1, 0, 0}), u({0, 1, 0})), Rational(0));
  EXPECT_EQ(complex_monomial_moment(3, u({2, 0, 0}), u({2, 0, 0})), Rational(1, 6));
  EXPECT_EQ(complex_monomial_moment(1, u({4}), u({4})), Rational(1));
}

TEST(Moments, RealExamples) {
  EXPECT_EQ(real_monomial_moment(3, u({2, 0, 0})), Rational(1, 3));
  EXPECT_EQ(real_monomial_moment(3, u({4, 0, 0})), Rational(1, 5));
  EXPECT_EQ(real_monomial_moment(3, u({2, 2, 0})), Rational(1, 15));
  EXPECT_EQ(real_monomial_moment(3, u({1, 1, 0})), Rational(0));
  EXPECT_EQ(real_monomial_moment(4, u({0, 0, 0, 0})), Rational(1));
}

namespace {
Polynomial real_part(const Polynomial& p) {
  Polynomial out(p.layout());
  for (const auto& [e, c] : p.terms()) out.add_term(e, GaussianRational(c.real()));
  return out;
}
}  // namespace

TEST(Moments, AgreeWithPizzettiOracle) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const unsigned m = 1 + trial % 4;
    const unsigned k = trial % 4;
    const Layout c = Layout::complex(m);
    const auto p = real_part(testkit::random_homogeneous(rng, c, k, k, 5));
    EXPECT_EQ(GaussianRational(integrate_sphere(p)), testkit::pizzetti_mean(p, 2 * m, 2 * k)) << to_string(p);

    const Layout r = Layout::real(2 + trial % 4);
    const unsigned degree = 2 * (trial % 3) + (trial % 2);
    const auto q = real_part(testkit::random_homogeneous(rng, r, degree, 0, 5));
    EXPECT_EQ(GaussianRational(integrate_sphere(q)), testkit::pizzetti_mean(q, r.block(0).count, degree))
        << to_string(q);
  }
}

TEST(Moments, Normalization) {
  for (unsigned m = 1; m <= 6; ++m) {
    const Layout c = Layout::complex(m);
    EXPECT_EQ(integrate_sphere(Polynomial::constant(c, 1)), Rational(1));
    EXPECT_EQ(integrate_sphere(Polynomial::constant(Layout::real(m + 1), 1)), Rational(1));
    Rational total = 0;
    for (unsigned j = 0; j < m; ++j) {
      std::vector<unsigned> a(m, 0);
      a[j] = 1;
      total += complex_monomial_moment(m, a, a);
    }
    EXPECT_EQ(total, Rational(1));
  }
}

TEST(Moments, RadiusInvariance) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const unsigned m = 2 + trial % 3;
    const Layout c = Layout::complex(m);
    const auto lambda = testkit::random_traceless(rng, m);
    const auto f = diagonal_form(c, lambda);
    const auto p = f * f * f + f;
    const auto r2 = radius_squared(c);
    EXPECT_EQ(integrate_sphere(r2 * p), integrate_sphere(p));
    EXPECT_EQ(integrate_sphere(r2 * r2 * p), integrate_sphere(p));
  }
}

TEST(Moments, PermutationInvariance) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<unsigned> small(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const unsigned m = 2 + trial % 4;
    std::vector<unsigned> a(m);
    for (auto& x : a) x = small(rng);
    const Rational base = complex_monomial_moment(m, a, a);
    std::vector<unsigned> b = a;
    std::shuffle(b.begin(), b.end(), rng);
    EXPECT_EQ(complex_monomial_moment(m, b, b), base);
    std::vector<unsigned> e(m);
    for (auto& x : e) x = 2 * small(rng);
    std::vector<unsigned> g = e;
    std::shuffle(g.begin(), g.end(), rng);
    EXPECT_EQ(real_monomial_moment(m, g), real_monomial_moment(m, e));
  }
}

TEST(Moments, GoldenIntegrals) {
  const Layout c3 = Layout::complex(3);
  const auto w = diagonal_form(c3, std::vector<Rational>{1, 1, -2});
  const auto v = diagonal_form(c3, std::vector<Rational>{1, -1, 0});
  EXPECT_EQ(integrate_sphere(w * w * w), Rational(-1, 5));
  EXPECT_EQ(integrate_sphere(v * v * w), Rational(1, 15));
  EXPECT_EQ(integrate_sphere(w), Rational(0));
  EXPECT_EQ(integrate_pairing(v * v, w), Rational(1, 15));
}

TEST(Moments, ProductsFactorize) {
  const Layout prod({{BlockKind::Real, 3}, {BlockKind::Complex, 3}});
  const auto x1 = coordinate(prod, 1, 0);
  const auto a = abs2(prod, 1, 1);
  // ∫x1²·|z1|² = 1/3 · 1/3
  EXPECT_EQ(integrate_product(x1 * x1 * a), Rational(1, 9));
  const std::vector<Polynomial> parts{coordinate(Layout::real(3), 1) * coordinate(Layout::real(3), 1),
                                      abs2(Layout::complex(3), 1)};
  EXPECT_EQ(integrate_separable(parts), Rational(1, 9));
  EXPECT_THROW(integrate_sphere(x1), DimensionMismatch);
  const std::vector<Polynomial> bad{x1 * a};
  EXPECT_THROW(integrate_separable(bad), std::invalid_argument);
}

TEST(Moments, ImaginaryIntegralRejected) {
  const Layout c2 = Layout::complex(2);
  EXPECT_THROW(integrate_sphere(abs2(c2, 1) * GaussianRational::imaginary_unit()), std::domain_error);
}

TEST(Moments, CacheGrows) {
  const auto before = moment_cache_size();
  complex_monomial_moment(7, u({3, 1, 4, 1, 5, 0, 2}), u({3, 1, 4, 1, 5, 0, 2}));
  EXPECT_GT(moment_cache_size(), before);
  const auto after = moment_cache_size();
  complex_monomial_moment(7, u({3, 1, 4, 1, 5, 0, 2}), u({3, 1, 4, 1, 5, 0, 2}));
  EXPECT_EQ(moment_cache_size(), after);
}

TEST(Moments, MonteCarloOracle) {
  McConfig cfg;
  cfg.samples = 200'000;
  cfg.seed = 4;
  const Layout c2 = Layout::complex(2);
  const Layout c3 = Layout::complex(3);
  const Layout r4 = Layout::real(4);
  const std::vector<Polynomial> cases{
      abs2(c2, 1),
      abs2(c3, 1) * abs2(c3, 2) * abs2(c3, 3) * GaussianRational(60),
      power(abs2(c3, 1), 3),
      coordinate(r4, 1) * coordinate(r4, 1) * coordinate(r4, 2) * coordinate(r4, 2),
      z(c3, 1) * zbar(c3, 2) + zbar(c3, 1) * z(c3, 2),
  };
  for (const auto& p : cases) {
    const auto exact = integrate_sphere(p);
    const auto est = mc_integrate(p, cfg);
    EXPECT_TRUE(est.agrees_with(exact, 4.0)) << to_string(p) << " exact " << format_rational(exact) << " est "
                                             << est.estimate << " +- " << est.standard_error;
  }
}
