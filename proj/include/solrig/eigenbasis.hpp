#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "solrig/manifold.hpp"
#include "solrig/polynomial.hpp"

namespace solrig {

/// Trace-free Hermitian matrix A with exact Q(i) entries. Its induced
/// function z ↦ Σ A_ij z_i zb_j is a flat-harmonic element of H_{1,1}, i.e.
/// a first eigenfunction on CP^m.
class HermitianForm {
 public:
  /// Row-major entries of an n×n matrix. Throws std::invalid_argument unless
  /// A = A* and tr A = 0.
  HermitianForm(std::size_t n, std::vector<GaussianRational> entries);

  static HermitianForm diagonal(std::span<const Rational> lambda);

  std::size_t size() const { return n_; }
  const GaussianRational& at(std::size_t i, std::size_t j) const { return entries_.at(i * n_ + j); }
  bool is_diagonal() const;

  /// Σ A_ij z_i zb_j on complex block `block` of `layout`.
  Polynomial to_polynomial(const Layout& layout, std::size_t block = 0) const;

 private:
  std::size_t n_;
  std::vector<GaussianRational> entries_;
};

/// Eigenvalues of a Hermitian form. Diagonal input is handled exactly and
/// keeps coordinate order (λ_i pairs with |z_i|²); anything else goes
/// through a numeric eigensolver, is sorted in descending order and is
/// flagged approximate.
struct HermitianEigenvalues {
  std::vector<double> values;
  std::optional<std::vector<Rational>> exact_values;
  double tolerance = 0.0;

  bool is_exact() const { return exact_values.has_value(); }
};

inline constexpr double kDiagonalizeTolerance = 1e-12;

HermitianEigenvalues diagonalize(const HermitianForm& form);

struct BasisElement {
  /// Short stable name: "d2", "re1_3", "im2_3", "x1", prefixed "pr<f>." on products.
  std::string id;
  std::size_t factor = 0;
  /// Pullback to the manifold's full ambient layout.
  Polynomial function;
  /// Set for Fubini-Study factors.
  std::optional<HermitianForm> form;
};

/// Exact basis of the eigenspace E(2μ).
class EigenfunctionBasis {
 public:
  EigenfunctionBasis(ManifoldDescriptor manifold, Rational eigenvalue, std::vector<BasisElement> elements);

  const ManifoldDescriptor& manifold() const { return manifold_; }
  const Rational& eigenvalue() const { return eigenvalue_; }
  std::span<const BasisElement> elements() const { return elements_; }
  const BasisElement& element(std::size_t i) const { return elements_.at(i); }
  std::size_t size() const { return elements_.size(); }
  const Layout& layout() const { return layout_; }

  /// Σ coords[a] e_a.
  Polynomial combine(std::span<const Rational> coords) const;

  /// Real coordinates of p in this basis, or nullopt if p is not in the span.
  std::optional<std::vector<Rational>> coordinates_of(const Polynomial& p) const;

  /// Coordinates of Σ λ_i |z_i|² placed on Fubini-Study factor `factor`.
  std::vector<Rational> diagonal_coordinates(std::size_t factor, std::span<const Rational> lambda) const;

 private:
  ManifoldDescriptor manifold_;
  Rational eigenvalue_;
  std::vector<BasisElement> elements_;
  Layout layout_;
};

/// Builds E(2μ). Sphere factors contribute their n+1 coordinate functions,
/// CP^m factors the (m+1)²-1 functions of a trace-free Hermitian basis:
/// diagonal d_k = Σ_{i<=k}|z_i|² - k|z_{k+1}|², then z_i zb_j + z_j zb_i,
/// then I(z_i zb_j - z_j zb_i) for i < j.
///
/// Throws std::invalid_argument if 2μ is not an eigenvalue, and
/// UnsupportedManifold (UNSUPPORTED_CROSS_TERMS) if 2μ is reached by a sum
/// of two or more nonzero factor eigenvalues.
EigenfunctionBasis build_E2mu(const ManifoldDescriptor& d);

}  // namespace solrig
