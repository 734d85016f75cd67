#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "solrig/polynomial.hpp"
#include "solrig/rational.hpp"

namespace solrig {

/// Round sphere S^n of the given radius, n >= 2.
struct RoundSphere {
  unsigned n = 2;
  Rational radius = 1;
};

/// CP^m with the Fubini-Study metric normalized as S^{2m+1}(1)/S^1, so that
/// the Einstein constant is 2(m+1) and the spectrum is {4k(k+m)}.
struct ProjectiveSpace {
  unsigned m = 1;
};

using FactorShape = std::variant<RoundSphere, ProjectiveSpace>;

/// One factor of a (possibly trivial) product. The metric is
/// `metric_scale` times the model metric (unit sphere, or S^{2m+1}(1)/S^1);
/// eigenvalues and the Einstein constant scale by 1/metric_scale.
struct Factor {
  FactorShape shape;
  Rational metric_scale = 1;

  unsigned real_dimension() const;
  /// Einstein constant of the model metric (before scaling).
  Rational model_einstein_constant() const;
  Rational einstein_constant() const { return model_einstein_constant() / metric_scale; }
  /// k-th distinct Laplace eigenvalue, k = 0, 1, 2, ...
  Rational eigenvalue(unsigned k) const;
  /// Ambient coordinates of the model: R^{n+1} or C^{m+1}.
  CoordinateBlock ambient_block() const;
  std::string name() const;
};

/// A model Einstein manifold: one factor, or a product whose factors are
/// rescaled to a common Einstein constant. For products the common constant
/// is that of the first factor as written.
class ManifoldDescriptor {
 public:
  static ManifoldDescriptor sphere(unsigned n, Rational radius = 1);
  static ManifoldDescriptor projective(unsigned m);
  static ManifoldDescriptor product(std::vector<FactorShape> shapes);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_product() const { return factors_.size() > 1; }

  unsigned real_dimension() const;
  const Rational& einstein_constant() const { return mu_; }
  /// τ = 1/(2μ); f is constant for Einstein metrics and carried as zero.
  Rational soliton_scale() const { return 1 / (2 * mu_); }

  /// Dimension of the space of infinitesimal Einstein deformations, where it
  /// is known: 0 for CP^m (Cao-He, Table 2) and for S^2 x S^2.
  std::optional<unsigned> ied_dimension() const;

  /// One coordinate block per factor, in factor order.
  Layout ambient_layout() const;

  /// Canonical spec string, e.g. "S2xCP4" or "S3(r=2/1)".
  std::string spec() const;

 private:
  explicit ManifoldDescriptor(std::vector<Factor> factors);

  std::vector<Factor> factors_;
  Rational mu_;
};

/// Parses the manifold mini-language: factors joined by 'x', each factor
/// "S<n>", "S<n>(r=<rational>)" or "CP<m>". Throws ParseError on malformed
/// text and UnsupportedManifold on well-formed but unsupported factors
/// (S^1, CP^0, non-positive radius).
ManifoldDescriptor parse_manifold(std::string_view spec);

/// Result of a spectral membership query. Each witness lists, per factor,
/// the eigenvalue index k_f with Σ_f λ_f(k_f) = value.
struct SpectrumMembership {
  bool contains = false;
  std::vector<std::vector<unsigned>> witnesses;
};

SpectrumMembership spectrum_contains(const ManifoldDescriptor& d, const Rational& value);

enum class WeakRigidity { WeaklySolitonicRigid, InconclusiveHas2Mu };

std::string to_string(WeakRigidity verdict);

struct WeakRigidityResult {
  WeakRigidity verdict = WeakRigidity::WeaklySolitonicRigid;
  Rational two_mu;
  std::vector<std::vector<unsigned>> witnesses;
};

/// 2μ ∉ spec(Δ) rules out nearby non-Einstein solitons.
WeakRigidityResult weak_rigidity_check(const ManifoldDescriptor& d);

}  // namespace solrig
