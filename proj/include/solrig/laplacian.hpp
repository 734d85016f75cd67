#pragma once

#include <vector>

#include "solrig/polynomial.hpp"

namespace solrig {

/// Flat Laplacian with the geometer's sign: on a complex block
/// Δ = -4 Σ ∂_{z_j} ∂_{zb_j}, on a real block Δ = -Σ ∂²_{x_i}. Several blocks
/// contribute additively.
Polynomial flat_laplacian(const Polynomial& p);

/// p = harmonic + r² · remainder with Δ(harmonic) = 0.
struct HarmonicSplit {
  Polynomial harmonic;
  Polynomial remainder;
};

/// Splits a homogeneous polynomial on a single block: bidegree (k, l) on a
/// complex block, degree k on a real block. The remainder solves
/// Δ(r² q) = Δp on the monomial basis of the next lower degree.
/// Throws DegreeMismatch when p is not (bi)homogeneous.
HarmonicSplit harmonic_decompose(const Polynomial& p);

/// Every exponent vector of a given total degree in `variables` slots, in
/// canonical order.
std::vector<Exponents> monomials_of_degree(unsigned variables, unsigned degree);

}  // namespace solrig
