#include "solrig/eigenbasis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "exact_linear.hpp"
#include "solrig/errors.hpp"

namespace solrig {

HermitianForm::HermitianForm(std::size_t n, std::vector<GaussianRational> entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n_ * n_) throw std::invalid_argument("HermitianForm: expected n*n entries");
  GaussianRational trace;
  for (std::size_t i = 0; i < n_; ++i) {
    trace += at(i, i);
    for (std::size_t j = 0; j < n_; ++j) {
      if (!(at(i, j) == at(j, i).conj())) throw std::invalid_argument("HermitianForm: matrix is not Hermitian");
    }
  }
  if (!trace.is_zero()) throw std::invalid_argument("HermitianForm: trace must vanish");
}

HermitianForm HermitianForm::diagonal(std::span<const Rational> lambda) {
  const std::size_t n = lambda.size();
  std::vector<GaussianRational> entries(n * n);
  for (std::size_t i = 0; i < n; ++i) entries[i * n + i] = lambda[i];
  return HermitianForm(n, std::move(entries));
}

bool HermitianForm::is_diagonal() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (i != j && !at(i, j).is_zero()) return false;
    }
  }
  return true;
}

Polynomial HermitianForm::to_polynomial(const Layout& layout, std::size_t block) const {
  if (layout.block(block).kind != BlockKind::Complex || layout.block(block).count != n_) {
    throw DimensionMismatch("HermitianForm: block does not match the matrix size");
  }
  Polynomial p(layout);
  for (unsigned i = 0; i < n_; ++i) {
    for (unsigned j = 0; j < n_; ++j) {
      if (at(i, j).is_zero()) continue;
      p += multiply(z(layout, i + 1, block), zbar(layout, j + 1, block)) * at(i, j);
    }
  }
  return p;
}

HermitianEigenvalues diagonalize(const HermitianForm& form) {
  HermitianEigenvalues out;
  const auto n = form.size();
  if (form.is_diagonal()) {
    std::vector<Rational> exact;
    for (std::size_t i = 0; i < n; ++i) {
      exact.push_back(form.at(i, i).real());
      out.values.push_back(exact.back().get_d());
    }
    out.exact_values = std::move(exact);
    return out;
  }
  Eigen::MatrixXcd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = {form.at(i, j).real().get_d(), form.at(i, j).imag().get_d()};
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  out.values.assign(ev.data(), ev.data() + ev.size());
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  out.tolerance = kDiagonalizeTolerance * std::max(1.0, m.norm());
  return out;
}

EigenfunctionBasis::EigenfunctionBasis(ManifoldDescriptor manifold, Rational eigenvalue,
                                       std::vector<BasisElement> elements)
    : manifold_(std::move(manifold)),
      eigenvalue_(std::move(eigenvalue)),
      elements_(std::move(elements)),
      layout_(manifold_.ambient_layout()) {}

Polynomial EigenfunctionBasis::combine(std::span<const Rational> coords) const {
  if (coords.size() != elements_.size()) throw DimensionMismatch("coordinate vector length does not match the basis");
  Polynomial p(layout_);
  for (std::size_t a = 0; a < coords.size(); ++a) {
    if (sgn(coords[a]) != 0) p += elements_[a].function * GaussianRational(coords[a]);
  }
  return p;
}

std::optional<std::vector<Rational>> EigenfunctionBasis::coordinates_of(const Polynomial& p) const {
  if (!(p.layout() == layout_)) throw DimensionMismatch("polynomial does not live on the manifold's ambient layout");
  std::map<Exponents, std::size_t, GradedLexOrder> row_of;
  auto note = [&](const Polynomial& q) {
    for (const auto& [e, c] : q.terms()) row_of.try_emplace(e, row_of.size());
  };
  for (const auto& el : elements_) note(el.function);
  note(p);
  // One real and one imaginary equation per monomial.
  const std::size_t rows = 2 * row_of.size();
  detail::RationalMatrix a(rows, std::vector<Rational>(elements_.size()));
  std::vector<Rational> b(rows);
  for (std::size_t col = 0; col < elements_.size(); ++col) {
    for (const auto& [e, c] : elements_[col].function.terms()) {
      const auto r = row_of.at(e);
      a[2 * r][col] = c.real();
      a[2 * r + 1][col] = c.imag();
    }
  }
  for (const auto& [e, c] : p.terms()) {
    const auto r = row_of.at(e);
    b[2 * r] = c.real();
    b[2 * r + 1] = c.imag();
  }
  return detail::solve_exact(std::move(a), std::move(b));
}

std::vector<Rational> EigenfunctionBasis::diagonal_coordinates(std::size_t factor, std::span<const Rational> lambda) const {
  const auto& shape = manifold_.factors().at(factor).shape;
  if (!std::holds_alternative<ProjectiveSpace>(shape)) {
    throw std::invalid_argument("diagonal coordinates need a Fubini-Study factor");
  }
  Rational sum = 0;
  for (const auto& l : lambda) sum += l;
  if (sgn(sum) != 0) throw std::invalid_argument("lambda must sum to zero");
  auto coords = coordinates_of(diagonal_form(layout_, lambda, factor));
  if (!coords) throw std::logic_error("diagonal form outside E(2mu)");
  return *coords;
}

namespace {

std::string prefixed(const ManifoldDescriptor& d, std::size_t factor, const std::string& id) {
  return d.is_product() ? "pr" + std::to_string(factor + 1) + "." + id : id;
}

void append_projective_basis(const ManifoldDescriptor& d, std::size_t factor, const Layout& layout,
                             std::vector<BasisElement>& out) {
  const unsigned n = std::get<ProjectiveSpace>(d.factors()[factor].shape).m + 1;
  auto push = [&](std::string id, HermitianForm form) {
    Polynomial f = form.to_polynomial(layout, factor);
    out.push_back({prefixed(d, factor, id), factor, std::move(f), std::move(form)});
  };
  for (unsigned k = 1; k < n; ++k) {
    std::vector<Rational> lambda(n, 0);
    for (unsigned i = 0; i < k; ++i) lambda[i] = 1;
    lambda[k] = -static_cast<long>(k);
    push("d" + std::to_string(k), HermitianForm::diagonal(lambda));
  }
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = i + 1; j < n; ++j) {
      std::vector<GaussianRational> e(n * n);
      e[i * n + j] = 1;
      e[j * n + i] = 1;
      push("re" + std::to_string(i + 1) + "_" + std::to_string(j + 1), HermitianForm(n, std::move(e)));
    }
  }
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = i + 1; j < n; ++j) {
      std::vector<GaussianRational> e(n * n);
      e[i * n + j] = GaussianRational(0, 1);
      e[j * n + i] = GaussianRational(0, -1);
      push("im" + std::to_string(i + 1) + "_" + std::to_string(j + 1), HermitianForm(n, std::move(e)));
    }
  }
}

}  // namespace

EigenfunctionBasis build_E2mu(const ManifoldDescriptor& d) {
  const Rational two_mu = 2 * d.einstein_constant();
  const auto membership = spectrum_contains(d, two_mu);
  if (!membership.contains) throw std::invalid_argument("2mu is not a Laplace eigenvalue of " + d.spec());

  std::vector<bool> contributes(d.factors().size(), false);
  for (const auto& w : membership.witnesses) {
    const auto nonzero = std::count_if(w.begin(), w.end(), [](unsigned k) { return k != 0; });
    if (nonzero >= 2) {
      throw UnsupportedManifold("UNSUPPORTED_CROSS_TERMS: 2mu on " + d.spec() +
                                " is a sum of several nonzero factor eigenvalues");
    }
    for (std::size_t f = 0; f < w.size(); ++f) {
      if (w[f] == 0) continue;
      if (w[f] != 1) {
        throw UnsupportedManifold("2mu on " + d.spec() + " is a higher eigenvalue of factor " + d.factors()[f].name());
      }
      contributes[f] = true;
    }
  }

  const Layout layout = d.ambient_layout();
  std::vector<BasisElement> elements;
  for (std::size_t f = 0; f < d.factors().size(); ++f) {
    if (!contributes[f]) continue;
    if (const auto* s = std::get_if<RoundSphere>(&d.factors()[f].shape)) {
      for (unsigned i = 1; i <= s->n + 1; ++i) {
        elements.push_back({prefixed(d, f, "x" + std::to_string(i)), f, coordinate(layout, i, f), std::nullopt});
      }
    } else {
      append_projective_basis(d, f, layout, elements);
    }
  }
  return EigenfunctionBasis(d, two_mu, std::move(elements));
}

}  // namespace solrig
