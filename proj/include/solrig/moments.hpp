#pragma once

#include <span>

#include "solrig/polynomial.hpp"
#include "solrig/rational.hpp"

namespace solrig {

// All integrals here are taken against the normalized (total mass 1) round
// measure on unit spheres, and against the product of those measures on
// products. An S^1-invariant integrand on S^{2M-1} integrates to the same
// value on CP^{M-1} (Riemannian submersion with normalized fibers), so
// Fubini-Study integrals are defined as the sphere integrals upstairs.

/// ∫ z^α zb^β over S^{2M-1}. Zero unless α = β, in which case it equals
/// (M-1)! Πα_j! / (M-1+|α|)!.
Rational complex_monomial_moment(unsigned m, std::span<const unsigned> alpha, std::span<const unsigned> beta);

/// ∫ x^a over S^{N-1}. Zero if any a_i is odd, otherwise
/// Π(a_i-1)!! / (N (N+2) ... (N+|a|-2)).
Rational real_monomial_moment(unsigned n, std::span<const unsigned> exponents);

/// Integral of a real-valued polynomial over the unit sphere of its single
/// block. Throws std::domain_error if the result has an imaginary part, and
/// DimensionMismatch for multi-block layouts.
Rational integrate_sphere(const Polynomial& p);

/// Integral over the product of the unit spheres of every block. Each
/// monomial is a product of pullbacks, so the integral factorizes term by term.
Rational integrate_product(const Polynomial& p);

/// ∫ p·q over the product of unit spheres, without forming the product.
Rational integrate_pairing(const Polynomial& p, const Polynomial& q);

/// ∫ Π_f pr_f^* p_f over the product of the factors' unit spheres, where each
/// entry of `factors` is one single-block polynomial. Throws
/// std::invalid_argument if an entry spans more than one block (it is then
/// not a pullback from a single factor).
Rational integrate_separable(std::span<const Polynomial> factors);

/// Number of memoized moments (diagnostics for the cache).
std::size_t moment_cache_size();

}  // namespace solrig
