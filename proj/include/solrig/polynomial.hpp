#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "solrig/rational.hpp"

namespace solrig {

enum class BlockKind { Complex, Real };

/// One group of ambient coordinates. A complex block of count M carries the
/// 2M exponent slots z_1..z_M, zb_1..zb_M (Wirtinger variables treated as
/// independent); a real block of count N carries x_1..x_N.
struct CoordinateBlock {
  BlockKind kind = BlockKind::Complex;
  unsigned count = 0;

  unsigned slots() const { return kind == BlockKind::Complex ? 2 * count : count; }
  friend bool operator==(const CoordinateBlock&, const CoordinateBlock&) = default;
};

/// Ordered list of coordinate blocks. A single block is the ambient space of
/// one sphere; several blocks are the ambient space of a product of spheres,
/// each factor pulled back through its own projection.
class Layout {
 public:
  Layout() = default;
  explicit Layout(std::vector<CoordinateBlock> blocks);

  static Layout complex(unsigned m) { return Layout({{BlockKind::Complex, m}}); }
  static Layout real(unsigned n) { return Layout({{BlockKind::Real, n}}); }

  std::span<const CoordinateBlock> blocks() const { return blocks_; }
  const CoordinateBlock& block(std::size_t b) const { return blocks_.at(b); }
  std::size_t block_count() const { return blocks_.size(); }

  /// Length of every exponent vector.
  std::size_t slots() const { return slots_; }
  /// First exponent slot belonging to block b.
  std::size_t slot_offset(std::size_t b) const { return slot_offsets_.at(b); }
  /// Number of values an evaluation point must supply (one per z_j or x_i).
  std::size_t point_size() const { return point_size_; }
  std::size_t point_offset(std::size_t b) const { return point_offsets_.at(b); }

  std::string variable_name(std::size_t slot) const;

  friend bool operator==(const Layout& a, const Layout& b) { return a.blocks_ == b.blocks_; }

 private:
  std::vector<CoordinateBlock> blocks_;
  std::vector<std::size_t> slot_offsets_;
  std::vector<std::size_t> point_offsets_;
  std::size_t slots_ = 0;
  std::size_t point_size_ = 0;
};

using Exponents = std::vector<unsigned>;

/// Graded lexicographic order, largest monomial first.
struct GradedLexOrder {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// (holomorphic degree, antiholomorphic degree) of a complex block.
struct Bidegree {
  unsigned holomorphic = 0;
  unsigned antiholomorphic = 0;
  friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

/// Sparse polynomial with exact Q(i) coefficients. Zero coefficients are
/// never stored, and iteration follows the canonical graded-lex order.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, GaussianRational, GradedLexOrder>;

  explicit Polynomial(Layout layout);

  static Polynomial constant(Layout layout, const GaussianRational& value);
  static Polynomial monomial(Layout layout, Exponents exponents, const GaussianRational& coefficient = 1);

  const Layout& layout() const { return layout_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of the given monomial (zero if absent).
  GaussianRational coefficient(const Exponents& exponents) const;

  /// Adds coefficient * x^exponents, dropping the term if it cancels.
  void add_term(const Exponents& exponents, const GaussianRational& coefficient);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const GaussianRational& scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const GaussianRational& s) { return a *= s; }
  friend Polynomial operator*(const GaussianRational& s, Polynomial a) { return a *= s; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.layout_ == b.layout_ && a.terms_ == b.terms_;
  }

  /// Common bidegree of every term of a complex block, if there is one.
  /// The zero polynomial has no bidegree.
  std::optional<Bidegree> bidegree(std::size_t block = 0) const;
  /// Common total degree within one block, if there is one.
  std::optional<unsigned> block_degree(std::size_t block = 0) const;

  /// True when every coefficient is real.
  bool has_real_coefficients() const;

 private:
  void require_same_layout(const Polynomial& other, const char* what) const;

  Layout layout_;
  TermMap terms_;
};

/// Exact product; layouts must agree.
Polynomial multiply(const Polynomial& p, const Polynomial& q);
inline Polynomial operator*(const Polynomial& p, const Polynomial& q) { return multiply(p, q); }

Polynomial power(const Polynomial& p, unsigned exponent);

// Building blocks. `block` selects the coordinate block, indices are 1-based
// to match the variable names.
Polynomial z(const Layout& layout, unsigned j, std::size_t block = 0);
Polynomial zbar(const Layout& layout, unsigned j, std::size_t block = 0);
/// |z_j|^2 = z_j * zb_j.
Polynomial abs2(const Layout& layout, unsigned j, std::size_t block = 0);
Polynomial coordinate(const Layout& layout, unsigned i, std::size_t block = 0);
/// Squared Euclidean radius of one block: sum |z_j|^2 or sum x_i^2.
Polynomial radius_squared(const Layout& layout, std::size_t block = 0);
/// sum_i weights[i] * |z_i|^2 on a single complex block.
Polynomial diagonal_form(const Layout& layout, std::span<const Rational> weights, std::size_t block = 0);

/// Pulls a single-block polynomial back to block `block` of `target`.
Polynomial embed(const Polynomial& p, const Layout& target, std::size_t block);

/// Derivative with respect to one exponent slot (z_j and zb_j are independent).
Polynomial partial(const Polynomial& p, std::size_t slot);

/// Value at a point with one entry per z_j (zb_j uses the conjugate) or x_i.
std::complex<double> evaluate(const Polynomial& p, std::span<const std::complex<double>> point);
GaussianRational evaluate(const Polynomial& p, std::span<const GaussianRational> point);

/// Canonical text form, e.g. "1/1*z1*zb1 - 1/1*z2*zb2". The zero polynomial is "0".
std::string to_string(const Polynomial& p);

/// Inverse of to_string. Also accepts integer coefficients, an omitted
/// coefficient (meaning 1) and powers written as "z1^2". Throws ParseError.
Polynomial parse_polynomial(std::string_view text, const Layout& layout);

}  // namespace solrig
