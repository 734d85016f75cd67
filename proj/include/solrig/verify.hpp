#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "solrig/eigenbasis.hpp"
#include "solrig/manifold.hpp"
#include "solrig/polynomial.hpp"

namespace solrig {

struct McConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  /// Agreement band, in standard errors.
  double sigma = 4.0;
};

inline constexpr std::uint64_t kMinMcSamples = 10'000;

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;

  /// |estimate - exact| <= sigma * standard_error.
  bool agrees_with(const Rational& exact, double sigma) const;
};

/// Monte-Carlo mean of the real part of p over the product of the unit
/// spheres of its layout, sampled by normalizing standard-normal vectors.
/// Work is split into a fixed number of seeded shards that are reduced in
/// order, so the result is bit-identical for a given seed whatever the
/// thread count. Throws std::invalid_argument if samples < kMinMcSamples.
McEstimate mc_integrate(const Polynomial& p, const McConfig& cfg);

/// Same, checking that p lives on the manifold's ambient layout.
McEstimate mc_integrate(const Polynomial& p, const ManifoldDescriptor& d, const McConfig& cfg);

struct GradientIdentity {
  Rational lhs;  ///< ∫ |∇v|² w
  Rational rhs;  ///< μ ∫ v² w
  bool equal = false;
};

/// ∫|∇v|² w = μ ∫ v² w for v, w in E(2μ). The gradient is the tangential
/// gradient on each unit sphere, |∇_amb v|² - (E v)² with E the Euler
/// operator, scaled by the factor's inverse metric scale; for S^1-invariant
/// functions on S^{2m+1} it equals the Fubini-Study gradient norm.
/// Throws std::invalid_argument if v or w is not in E(2μ).
GradientIdentity gradient_identity_check(const Polynomial& v, const Polynomial& w, const EigenfunctionBasis& basis);
GradientIdentity gradient_identity_check(const Polynomial& v, const Polynomial& w, const ManifoldDescriptor& d);

/// Squared gradient norm |∇p|² on the manifold, as an ambient polynomial.
Polynomial gradient_norm_squared(const Polynomial& p, const ManifoldDescriptor& d);

enum class ItemStatus { Passed, Skipped };

struct SuiteItem {
  std::string name;
  ItemStatus status = ItemStatus::Passed;
  std::string detail;
};

struct SuiteReport {
  std::string manifold;
  std::vector<SuiteItem> items;
};

/// Runs the exact identity suite on E(2μ):
///  (a) flat harmonicity and degree of every basis element,
///  (b) Δ(f²) = -8 Σλ_i²|z_i|² for seeded random rational λ with Σλ = 0,
///  (c) Δ(r⁴) = -8(M+1) r² on C^M and -(4N+8) r² on R^N,
///  (d) zero mean of every basis element,
///  (e) antipodal oddness of sphere-factor eigenfunctions, and vanishing of
///      the whole Gram tensor when every element is odd,
///  (f) the gradient identity on every basis pair.
/// The first failing identity throws IdentityFailure with the offending
/// polynomial serialized.
SuiteReport identity_suite(const ManifoldDescriptor& d, std::uint64_t seed = 0);

std::string to_text(const SuiteReport& report);

struct McSpotCheck {
  std::string label;
  Rational exact;
  McEstimate estimate;
  bool agrees = false;
};

/// Monte-Carlo cross-checks of a few exact quantities on E(2μ): the mean of
/// the first element and the cubic integrals T(0,0,0), T(0,0,1), T(1,1,1).
std::vector<McSpotCheck> mc_spot_checks(const EigenfunctionBasis& basis, const McConfig& cfg);

}  // namespace solrig
