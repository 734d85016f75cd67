#include "solrig/moments.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

#include "solrig/errors.hpp"

namespace solrig {

namespace {

struct MomentKey {
  BlockKind kind;
  unsigned dimension;
  std::vector<unsigned> exponents;

  friend bool operator<(const MomentKey& a, const MomentKey& b) {
    return std::tie(a.kind, a.dimension, a.exponents) < std::tie(b.kind, b.dimension, b.exponents);
  }
};

// Read-mostly cache; a racing insert computes the same exact value, so the
// population order cannot change observable results.
class MomentCache {
 public:
  template <class Compute>
  Rational get(const MomentKey& key, Compute compute) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = table_.find(key); it != table_.end()) return it->second;
    }
    Rational value = compute();
    std::unique_lock lock(mutex_);
    table_.emplace(key, value);
    return value;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<MomentKey, Rational> table_;
};

MomentCache& cache() {
  static MomentCache instance;
  return instance;
}

mpz_class factorial(unsigned long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

mpz_class double_factorial(long n) {
  if (n <= 0) return 1;
  mpz_class out;
  mpz_2fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

Rational block_moment(const CoordinateBlock& blk, std::span<const unsigned> slots) {
  if (blk.kind == BlockKind::Complex) {
    return complex_monomial_moment(blk.count, slots.first(blk.count), slots.subspan(blk.count, blk.count));
  }
  return real_monomial_moment(blk.count, slots);
}

// Product of the per-block moments of one monomial.
Rational monomial_weight(const Layout& layout, const Exponents& e) {
  Rational weight = 1;
  for (std::size_t b = 0; b < layout.block_count() && sgn(weight) != 0; ++b) {
    std::span<const unsigned> slots(e.data() + layout.slot_offset(b), layout.block(b).slots());
    weight *= block_moment(layout.block(b), slots);
  }
  return weight;
}

Rational require_real(const GaussianRational& value) {
  if (!value.is_real()) {
    throw std::domain_error("integrand is not real-valued: integral has imaginary part " + format_rational(value.imag()));
  }
  return value.real();
}

}  // namespace

Rational complex_monomial_moment(unsigned m, std::span<const unsigned> alpha, std::span<const unsigned> beta) {
  if (m < 1) throw std::invalid_argument("complex_monomial_moment: need at least one coordinate");
  if (alpha.size() != m || beta.size() != m) throw DimensionMismatch("complex_monomial_moment: exponent length");
  if (!std::equal(alpha.begin(), alpha.end(), beta.begin())) return 0;
  MomentKey key{BlockKind::Complex, m, {alpha.begin(), alpha.end()}};
  return cache().get(key, [&] {
    mpz_class num = factorial(m - 1);
    unsigned total = 0;
    for (unsigned a : alpha) {
      num *= factorial(a);
      total += a;
    }
    Rational r(num, factorial(m - 1 + total));
    r.canonicalize();
    return r;
  });
}

Rational real_monomial_moment(unsigned n, std::span<const unsigned> exponents) {
  if (n < 1) throw std::invalid_argument("real_monomial_moment: need at least one coordinate");
  if (exponents.size() != n) throw DimensionMismatch("real_monomial_moment: exponent length");
  for (unsigned a : exponents) {
    if (a % 2 != 0) return 0;
  }
  MomentKey key{BlockKind::Real, n, {exponents.begin(), exponents.end()}};
  return cache().get(key, [&] {
    mpz_class num = 1;
    unsigned total = 0;
    for (unsigned a : exponents) {
      num *= double_factorial(static_cast<long>(a) - 1);
      total += a;
    }
    mpz_class den = 1;
    for (unsigned j = 0; j < total / 2; ++j) den *= n + 2 * j;
    Rational r(num, den);
    r.canonicalize();
    return r;
  });
}

Rational integrate_sphere(const Polynomial& p) {
  if (p.layout().block_count() != 1) throw DimensionMismatch("integrate_sphere expects a single coordinate block");
  return integrate_product(p);
}

Rational integrate_product(const Polynomial& p) {
  const auto& layout = p.layout();
  GaussianRational total;
  for (const auto& [e, c] : p.terms()) {
    Rational weight = monomial_weight(layout, e);
    if (sgn(weight) != 0) total += c * GaussianRational(weight);
  }
  return require_real(total);
}

Rational integrate_pairing(const Polynomial& p, const Polynomial& q) {
  if (!(p.layout() == q.layout())) throw DimensionMismatch("integrate_pairing: different coordinate layouts");
  const auto& layout = p.layout();
  GaussianRational total;
  Exponents e(layout.slots());
  for (const auto& [ep, cp] : p.terms()) {
    for (const auto& [eq, cq] : q.terms()) {
      for (std::size_t s = 0; s < e.size(); ++s) e[s] = ep[s] + eq[s];
      Rational weight = monomial_weight(layout, e);
      if (sgn(weight) != 0) total += cp * cq * GaussianRational(weight);
    }
  }
  return require_real(total);
}

Rational integrate_separable(std::span<const Polynomial> factors) {
  Rational result = 1;
  for (const auto& f : factors) {
    if (f.layout().block_count() != 1) {
      throw std::invalid_argument("integrate_separable: factor is not a pullback from a single sphere");
    }
    result *= integrate_sphere(f);
  }
  return result;
}

std::size_t moment_cache_size() { return cache().size(); }

}  // namespace solrig
