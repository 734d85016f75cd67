#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace solrig {

using Rational = mpq_class;

/// Renders as "p/q"; the denominator is always printed, so 2 becomes "2/1".
std::string format_rational(const Rational& value);

/// Accepts "p", "p/q" and finite decimals such as "-0.25". Throws
/// std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// Comma-separated list of rationals, e.g. "1,1,-2".
std::vector<Rational> parse_rational_list(std::string_view text);

/// Exact element of Q(i). Polynomial coefficients live here because the
/// off-diagonal Hermitian basis functions carry a factor of i.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re, Rational im = 0);
  GaussianRational(long value) : GaussianRational(Rational(value)) {}
  GaussianRational(int value) : GaussianRational(Rational(value)) {}

  static GaussianRational imaginary_unit() { return {0, 1}; }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& other);
  GaussianRational& operator-=(const GaussianRational& other);
  GaussianRational& operator*=(const GaussianRational& other);
  /// Throws std::domain_error on division by zero.
  GaussianRational& operator/=(const GaussianRational& other);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_;
  Rational im_;
};

/// "p/q" for real values, "p/q*I" for pure imaginary ones and
/// "(p/q+r/s*I)" otherwise.
std::string format_gaussian(const GaussianRational& value);

}  // namespace solrig
