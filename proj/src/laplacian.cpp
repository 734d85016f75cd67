#include "solrig/laplacian.hpp"

#include <map>

#include "exact_linear.hpp"
#include "solrig/errors.hpp"

namespace solrig {

Polynomial flat_laplacian(const Polynomial& p) {
  const auto& layout = p.layout();
  Polynomial out(layout);
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t b = 0; b < layout.block_count(); ++b) {
      const auto& blk = layout.block(b);
      const auto off = layout.slot_offset(b);
      for (unsigned j = 0; j < blk.count; ++j) {
        if (blk.kind == BlockKind::Complex) {
          const auto hz = off + j;
          const auto az = off + blk.count + j;
          if (e[hz] == 0 || e[az] == 0) continue;
          Exponents d = e;
          --d[hz];
          --d[az];
          out.add_term(d, c * GaussianRational(-4L * e[hz] * e[az]));
        } else {
          const auto s = off + j;
          if (e[s] < 2) continue;
          Exponents d = e;
          d[s] -= 2;
          out.add_term(d, c * GaussianRational(-static_cast<long>(e[s]) * (e[s] - 1)));
        }
      }
    }
  }
  return out;
}

std::vector<Exponents> monomials_of_degree(unsigned variables, unsigned degree) {
  std::vector<Exponents> out;
  if (variables == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Exponents e(variables, 0);
  // Enumerate compositions recursively, first slot largest first.
  auto recurse = [&](auto&& self, unsigned slot, unsigned remaining) -> void {
    if (slot + 1 == variables) {
      e[slot] = remaining;
      out.push_back(e);
      return;
    }
    for (unsigned v = remaining + 1; v-- > 0;) {
      e[slot] = v;
      self(self, slot + 1, remaining - v);
    }
  };
  recurse(recurse, 0, degree);
  return out;
}

namespace {

std::vector<Exponents> remainder_basis(const Layout& layout, unsigned hol, unsigned antihol) {
  const auto& blk = layout.block(0);
  std::vector<Exponents> basis;
  if (blk.kind == BlockKind::Real) {
    return monomials_of_degree(blk.count, hol);
  }
  for (const auto& a : monomials_of_degree(blk.count, hol)) {
    for (const auto& b : monomials_of_degree(blk.count, antihol)) {
      Exponents e = a;
      e.insert(e.end(), b.begin(), b.end());
      basis.push_back(std::move(e));
    }
  }
  return basis;
}

}  // namespace

HarmonicSplit harmonic_decompose(const Polynomial& p) {
  const auto& layout = p.layout();
  if (layout.block_count() != 1) throw DegreeMismatch("harmonic_decompose expects a single coordinate block");
  const bool is_complex = layout.block(0).kind == BlockKind::Complex;

  if (p.is_zero()) return {p, Polynomial(layout)};

  unsigned hol = 0;
  unsigned antihol = 0;
  if (is_complex) {
    auto bd = p.bidegree();
    if (!bd) throw DegreeMismatch("harmonic_decompose: input is not bihomogeneous: " + to_string(p));
    if (bd->holomorphic == 0 || bd->antiholomorphic == 0) return {p, Polynomial(layout)};
    hol = bd->holomorphic - 1;
    antihol = bd->antiholomorphic - 1;
  } else {
    auto deg = p.block_degree();
    if (!deg) throw DegreeMismatch("harmonic_decompose: input is not homogeneous: " + to_string(p));
    if (*deg < 2) return {p, Polynomial(layout)};
    hol = *deg - 2;
  }

  const auto basis = remainder_basis(layout, hol, antihol);
  std::map<Exponents, std::size_t> row_of;
  for (std::size_t i = 0; i < basis.size(); ++i) row_of.emplace(basis[i], i);

  const Polynomial r2 = radius_squared(layout);
  detail::RationalMatrix matrix(basis.size(), std::vector<Rational>(basis.size()));
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Polynomial image = flat_laplacian(multiply(r2, Polynomial::monomial(layout, basis[col])));
    for (const auto& [e, c] : image.terms()) matrix[row_of.at(e)][col] = c.real();
  }

  const Polynomial target = flat_laplacian(p);
  std::vector<Rational> rhs_re(basis.size());
  std::vector<Rational> rhs_im(basis.size());
  for (const auto& [e, c] : target.terms()) {
    rhs_re[row_of.at(e)] = c.real();
    rhs_im[row_of.at(e)] = c.imag();
  }
  auto q_re = detail::solve_exact(matrix, rhs_re);
  auto q_im = detail::solve_exact(matrix, rhs_im);
  if (!q_re || !q_im) throw std::logic_error("harmonic_decompose: singular system");

  Polynomial remainder(layout);
  for (std::size_t i = 0; i < basis.size(); ++i) remainder.add_term(basis[i], GaussianRational((*q_re)[i], (*q_im)[i]));
  Polynomial harmonic = p - multiply(r2, remainder);
  return {std::move(harmonic), std::move(remainder)};
}

}  // namespace solrig
