#pragma once

// Generators and independent oracles shared by the test binaries.

#include <ostream>
#include <random>
#include <vector>

#include "solrig/eigenbasis.hpp"
#include "solrig/laplacian.hpp"
#include "solrig/polynomial.hpp"
#include "solrig/rational.hpp"

namespace solrig {

// Readable gtest failure messages.
inline void PrintTo(const Polynomial& p, std::ostream* os) { *os << to_string(p); }
inline void PrintTo(const GaussianRational& g, std::ostream* os) { *os << format_gaussian(g); }

}  // namespace solrig

namespace solrig::testkit {

inline Rational random_rational(std::mt19937_64& rng, long span = 9, long max_den = 7) {
  std::uniform_int_distribution<long> num(-span, span);
  std::uniform_int_distribution<long> den(1, max_den);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

/// Nonzero rational vector of length n with zero sum.
inline std::vector<Rational> random_traceless(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    std::vector<Rational> out(n);
    Rational sum = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      out[i] = random_rational(rng);
      sum += out[i];
    }
    out[n - 1] = -sum;
    for (const auto& x : out) {
      if (sgn(x) != 0) return out;
    }
  }
}

/// Random polynomial whose every term has the given degree in the block
/// (bidegree (k, l) for complex blocks, degree k for real ones).
inline Polynomial random_homogeneous(std::mt19937_64& rng, const Layout& layout, unsigned k, unsigned l,
                                     std::size_t terms = 6) {
  const auto& blk = layout.block(0);
  Polynomial p(layout);
  std::uniform_int_distribution<unsigned> pick(0, blk.count - 1);
  std::bernoulli_distribution imag(0.3);
  for (std::size_t t = 0; t < terms; ++t) {
    Exponents e(layout.slots(), 0);
    for (unsigned i = 0; i < k; ++i) ++e[pick(rng)];
    if (blk.kind == BlockKind::Complex) {
      for (unsigned i = 0; i < l; ++i) ++e[blk.count + pick(rng)];
    }
    GaussianRational c(random_rational(rng), imag(rng) ? random_rational(rng) : Rational(0));
    p.add_term(e, c);
  }
  return p;
}

/// Mean over the unit sphere of a homogeneous degree-2k polynomial in N real
/// variables: (Σ∂²)^k p / (2^k k! N(N+2)...(N+2k-2)). Uses only the flat
/// Laplacian, never the moment tables.
inline GaussianRational pizzetti_mean(const Polynomial& p, unsigned real_variables, unsigned degree) {
  if (degree % 2 == 1) return 0;
  const unsigned k = degree / 2;
  Polynomial q = p;
  for (unsigned i = 0; i < k; ++i) q = -flat_laplacian(q);
  Exponents zero(p.layout().slots(), 0);
  Rational denom = 1;
  for (unsigned i = 0; i < k; ++i) denom *= Rational(2 * (i + 1)) * Rational(real_variables + 2 * i);
  return q.coefficient(zero) / GaussianRational(denom);
}

using Matrix = std::vector<GaussianRational>;

inline Matrix form_matrix(const HermitianForm& f) {
  Matrix out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) out.push_back(f.at(i, j));
  }
  return out;
}

inline Matrix matmul(const Matrix& a, const Matrix& b, std::size_t n) {
  Matrix out(n * n, GaussianRational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += a[i * n + k] * b[k * n + j];
    }
  }
  return out;
}

inline GaussianRational trace(const Matrix& a, std::size_t n) {
  GaussianRational t(0);
  for (std::size_t i = 0; i < n; ++i) t += a[i * n + i];
  return t;
}

/// Unitary-moment oracle on S^{2n-1}: for trace-free Hermitian A, B, C,
/// ∫ (z*Az)(z*Bz)(z*Cz) = (tr ABC + tr ACB) / (n(n+1)(n+2)).
inline GaussianRational wick_cubic(const Matrix& a, const Matrix& b, const Matrix& c, std::size_t n) {
  const auto abc = trace(matmul(matmul(a, b, n), c, n), n);
  const auto acb = trace(matmul(matmul(a, c, n), b, n), n);
  return (abc + acb) / GaussianRational(Rational(static_cast<long>(n * (n + 1) * (n + 2))));
}

/// ∫ (z*Xz)(z*Cz) = (tr X tr C + tr XC) / (n(n+1)).
inline GaussianRational wick_quadratic(const Matrix& x, const Matrix& c, std::size_t n) {
  return (trace(x, n) * trace(c, n) + trace(matmul(x, c, n), n)) /
         GaussianRational(Rational(static_cast<long>(n * (n + 1))));
}

}  // namespace solrig::testkit
