#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "solrig/eigenbasis.hpp"
#include "solrig/manifold.hpp"
#include "solrig/rational.hpp"

namespace solrig {

/// T[a][b][c] = ∫ e_a e_b e_c dV over an eigenbasis, normalized measure.
/// Only a <= b <= c is stored; every permutation reads the same entry.
class CubicGramTensor {
 public:
  CubicGramTensor(std::size_t dimension, std::vector<Rational> entries);

  static std::size_t independent_entries(std::size_t dimension) {
    return dimension * (dimension + 1) * (dimension + 2) / 6;
  }
  /// Storage index of the multiset {a, b, c}.
  static std::size_t index(std::size_t a, std::size_t b, std::size_t c);

  std::size_t dimension() const { return dimension_; }
  const Rational& at(std::size_t a, std::size_t b, std::size_t c) const { return entries_.at(index(a, b, c)); }
  std::span<const Rational> entries() const { return entries_; }

  /// T(u, v, w) for coordinate vectors.
  Rational contract(std::span<const Rational> u, std::span<const Rational> v, std::span<const Rational> w) const;
  /// T(v, v, e_w).
  Rational pair_with_basis(std::span<const Rational> v, std::size_t w) const;

  std::size_t nonzero_count() const;
  bool is_zero() const { return nonzero_count() == 0; }

 private:
  std::size_t dimension_;
  std::vector<Rational> entries_;
};

/// Exact tensor over the basis; entries are independent and are filled by a
/// small worker pool, each writing its own slots.
CubicGramTensor gram_tensor(const EigenfunctionBasis& basis);

enum class ObstructionStatus { Obstructed, UnobstructedAtOrder2 };

std::string to_string(ObstructionStatus status);

struct ObstructionVerdict {
  ObstructionStatus status = ObstructionStatus::UnobstructedAtOrder2;
  /// Basis coordinates of v (obstruction_check input).
  std::vector<Rational> coordinates;
  /// Diagonal input λ (diagonal_criterion input).
  std::vector<Rational> lambda;
  /// T(v, v, e_w) for every basis element w (obstruction_check only).
  std::vector<Rational> pairings;
  /// Witness basis element (obstruction_check).
  std::optional<std::size_t> witness_index;
  /// Witness as a diagonal form Σ μ_i |z_i|² (diagonal_criterion).
  std::vector<Rational> witness_lambda;
  /// ∫ v² w at the witness; zero when unobstructed.
  Rational value;
};

/// Computes c_w = T(v, v, e_w) for all w; the first nonzero one in basis
/// order is the witness. Throws std::invalid_argument for v = 0 and
/// DimensionMismatch for a wrong coordinate length.
ObstructionVerdict obstruction_check(std::span<const Rational> v, const CubicGramTensor& tensor);

/// Same decision without a precomputed tensor: squares v once and pairs it
/// with each basis element.
ObstructionVerdict obstruction_check(std::span<const Rational> v, const EigenfunctionBasis& basis);

/// Decision for v = Σ λ_i |z_i|² on CP^m: obstructed iff the λ_i² are not all
/// equal. The witness is v itself when ∫v³ ≠ 0, otherwise the H_{1,1}
/// projection of v², Σ (λ_i² - mean λ²) |z_i|².
/// Throws std::invalid_argument unless λ has length m+1, Σλ = 0 and λ ≠ 0.
ObstructionVerdict diagonal_criterion(std::span<const Rational> lambda, unsigned m);

enum class KernelKind { Empty, Full, Family };

std::string to_string(KernelKind kind);

/// Per-factor piece of the kernel {v : T(v, v, ·) = 0}. On products the
/// cross terms vanish because every factor eigenfunction has zero mean, so
/// the kernel is the set of sums of per-factor kernel elements.
struct FactorKernel {
  std::size_t factor = 0;
  /// Empty (only 0), Full (whole factor eigenspace) or Family (balanced
  /// diagonal forms and their unitary orbit).
  KernelKind kind = KernelKind::Empty;
  std::vector<Rational> representative_lambda;
};

struct KernelFamily {
  KernelKind kind = KernelKind::Empty;
  std::vector<FactorKernel> factors;
  /// Basis coordinates of one nonzero kernel element; empty for Empty.
  std::vector<Rational> representative;
  /// λ of the representative when it comes from a Fubini-Study factor.
  std::vector<Rational> representative_lambda;
  std::string description;
};

/// Throws UnsupportedManifold when E(2μ) cannot be built.
KernelFamily kernel_family(const ManifoldDescriptor& d);

enum class GlobalVerdict { AllObstructed, KernelFamilyExists, AllUnobstructedAtOrder2, NoConformalDeformations };

std::string to_string(GlobalVerdict verdict);

struct GramSummary {
  std::size_t independent_entries = 0;
  std::size_t nonzero_entries = 0;
};

struct RigidityReport {
  ManifoldDescriptor manifold;
  WeakRigidityResult weak;
  std::size_t e2mu_dimension = 0;
  std::optional<unsigned> ied_dimension{};
  /// dim IED + dim E(2μ); a lower bound when the IED dimension is unknown.
  std::size_t isd_dimension = 0;
  bool isd_is_lower_bound = false;
  GlobalVerdict verdict = GlobalVerdict::NoConformalDeformations;
  std::optional<KernelFamily> kernel{};
  /// Set when the obstruction verdict, the IED dimension and the finite-order
  /// integrability lemma together give rigidity.
  bool rigid = false;
  std::optional<GramSummary> gram{};
  std::size_t sampled = 0;
  std::size_t sampled_obstructed = 0;
  std::vector<std::string> certificate{};
  std::vector<std::string> notes{};
  std::vector<std::string> citations{};
};

/// Largest E(2μ) for which analyze assembles the full Gram tensor.
inline constexpr std::size_t kAnalyzeGramLimit = 48;

RigidityReport analyze(const ManifoldDescriptor& d);

}  // namespace solrig
