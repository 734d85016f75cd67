#include "solrig/obstruction.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <thread>

#include "solrig/errors.hpp"
#include "solrig/moments.hpp"
#include "workers.hpp"

namespace solrig {

CubicGramTensor::CubicGramTensor(std::size_t dimension, std::vector<Rational> entries)
    : dimension_(dimension), entries_(std::move(entries)) {
  if (entries_.size() != independent_entries(dimension_)) {
    throw DimensionMismatch("CubicGramTensor: wrong number of entries");
  }
}

std::size_t CubicGramTensor::index(std::size_t a, std::size_t b, std::size_t c) {
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return c * (c + 1) * (c + 2) / 6 + b * (b + 1) / 2 + a;
}

Rational CubicGramTensor::contract(std::span<const Rational> u, std::span<const Rational> v,
                                   std::span<const Rational> w) const {
  if (u.size() != dimension_ || v.size() != dimension_ || w.size() != dimension_) {
    throw DimensionMismatch("contract: coordinate length does not match the tensor");
  }
  Rational total = 0;
  for (std::size_t a = 0; a < dimension_; ++a) {
    if (sgn(u[a]) == 0) continue;
    for (std::size_t b = 0; b < dimension_; ++b) {
      if (sgn(v[b]) == 0) continue;
      for (std::size_t c = 0; c < dimension_; ++c) {
        if (sgn(w[c]) == 0) continue;
        const auto& t = at(a, b, c);
        if (sgn(t) != 0) total += u[a] * v[b] * w[c] * t;
      }
    }
  }
  return total;
}

Rational CubicGramTensor::pair_with_basis(std::span<const Rational> v, std::size_t w) const {
  if (v.size() != dimension_) throw DimensionMismatch("pair_with_basis: coordinate length does not match the tensor");
  Rational total = 0;
  for (std::size_t a = 0; a < dimension_; ++a) {
    if (sgn(v[a]) == 0) continue;
    for (std::size_t b = 0; b < dimension_; ++b) {
      if (sgn(v[b]) == 0) continue;
      const auto& t = at(a, b, w);
      if (sgn(t) != 0) total += v[a] * v[b] * t;
    }
  }
  return total;
}

std::size_t CubicGramTensor::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const Rational& r) { return sgn(r) != 0; }));
}

CubicGramTensor gram_tensor(const EigenfunctionBasis& basis) {
  const std::size_t d = basis.size();
  std::vector<Rational> entries(CubicGramTensor::independent_entries(d));
  auto fill_row = [&](std::size_t a) {
    for (std::size_t b = a; b < d; ++b) {
      const Polynomial ab = multiply(basis.element(a).function, basis.element(b).function);
      for (std::size_t c = b; c < d; ++c) {
        entries[CubicGramTensor::index(a, b, c)] = integrate_pairing(ab, basis.element(c).function);
      }
    }
  };
  const std::size_t workers = detail::worker_count(8);
  if (workers == 1 || d < 8) {
    for (std::size_t a = 0; a < d; ++a) fill_row(a);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t a = t; a < d; a += workers) fill_row(a);
      });
    }
    for (auto& th : pool) th.join();
  }
  return CubicGramTensor(d, std::move(entries));
}

std::string to_string(ObstructionStatus status) {
  return status == ObstructionStatus::Obstructed ? "OBSTRUCTED" : "UNOBSTRUCTED_AT_ORDER_2";
}

namespace {

void require_nonzero(std::span<const Rational> v) {
  if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; })) {
    throw std::invalid_argument("the zero vector is not a deformation");
  }
}

ObstructionVerdict verdict_from_pairings(std::span<const Rational> v, std::vector<Rational> pairings) {
  ObstructionVerdict out;
  out.coordinates.assign(v.begin(), v.end());
  out.pairings = std::move(pairings);
  for (std::size_t w = 0; w < out.pairings.size(); ++w) {
    if (sgn(out.pairings[w]) != 0) {
      out.status = ObstructionStatus::Obstructed;
      out.witness_index = w;
      out.value = out.pairings[w];
      return out;
    }
  }
  out.status = ObstructionStatus::UnobstructedAtOrder2;
  out.value = 0;
  return out;
}

}  // namespace

ObstructionVerdict obstruction_check(std::span<const Rational> v, const CubicGramTensor& tensor) {
  if (v.size() != tensor.dimension()) throw DimensionMismatch("obstruction_check: coordinate length");
  require_nonzero(v);
  std::vector<Rational> pairings;
  for (std::size_t w = 0; w < tensor.dimension(); ++w) pairings.push_back(tensor.pair_with_basis(v, w));
  return verdict_from_pairings(v, std::move(pairings));
}

ObstructionVerdict obstruction_check(std::span<const Rational> v, const EigenfunctionBasis& basis) {
  if (v.size() != basis.size()) throw DimensionMismatch("obstruction_check: coordinate length");
  require_nonzero(v);
  const Polynomial f = basis.combine(v);
  const Polynomial square = multiply(f, f);
  std::vector<Rational> pairings;
  for (const auto& el : basis.elements()) pairings.push_back(integrate_pairing(square, el.function));
  return verdict_from_pairings(v, std::move(pairings));
}

ObstructionVerdict diagonal_criterion(std::span<const Rational> lambda, unsigned m) {
  if (lambda.size() != m + 1) {
    throw std::invalid_argument("diagonal_criterion: expected " + std::to_string(m + 1) + " eigenvalues for CP" +
                                std::to_string(m));
  }
  Rational sum = 0;
  for (const auto& l : lambda) sum += l;
  if (sgn(sum) != 0) throw std::invalid_argument("diagonal_criterion: eigenvalues must sum to zero");
  require_nonzero(lambda);

  ObstructionVerdict out;
  out.lambda.assign(lambda.begin(), lambda.end());
  const Rational first_sq = lambda[0] * lambda[0];
  const bool constant_square =
      std::all_of(lambda.begin(), lambda.end(), [&](const Rational& l) { return l * l == first_sq; });
  if (constant_square) {
    out.status = ObstructionStatus::UnobstructedAtOrder2;
    out.value = 0;
    return out;
  }

  out.status = ObstructionStatus::Obstructed;
  const Layout layout = Layout::complex(m + 1);
  const Polynomial f = diagonal_form(layout, lambda);
  const Polynomial square = multiply(f, f);
  Rational self = integrate_pairing(square, f);
  if (sgn(self) != 0) {
    out.witness_lambda = out.lambda;
    out.value = self;
    return out;
  }
  Rational mean_sq = 0;
  for (const auto& l : lambda) mean_sq += l * l;
  mean_sq /= static_cast<long>(lambda.size());
  for (const auto& l : lambda) out.witness_lambda.push_back(l * l - mean_sq);
  out.value = integrate_pairing(square, diagonal_form(layout, out.witness_lambda));
  if (sgn(out.value) == 0) throw std::logic_error("diagonal_criterion: projected witness pairs to zero");
  return out;
}

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Empty:
      return "EMPTY";
    case KernelKind::Full:
      return "FULL";
    case KernelKind::Family:
      return "FAMILY";
  }
  return "?";
}

namespace {

std::vector<Rational> balanced_lambda(unsigned n) {
  std::vector<Rational> lambda(n, 1);
  for (unsigned i = n / 2; i < n; ++i) lambda[i] = -1;
  return lambda;
}

std::string format_vector(std::span<const Rational> v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].get_str();
  }
  return out + ")";
}

KernelFamily kernel_family_of(const EigenfunctionBasis& basis) {
  const auto& d = basis.manifold();
  KernelFamily out;
  std::vector<std::string> parts;
  for (std::size_t f = 0; f < d.factors().size(); ++f) {
    const bool contributes = std::any_of(basis.elements().begin(), basis.elements().end(),
                                         [f](const BasisElement& e) { return e.factor == f; });
    if (!contributes) continue;
    const auto& factor = d.factors()[f];
    FactorKernel fk;
    fk.factor = f;
    if (std::holds_alternative<RoundSphere>(factor.shape)) {
      fk.kind = KernelKind::Full;
      parts.push_back(factor.name() + ": all linear functions (odd under the antipodal map)");
    } else {
      const unsigned n = std::get<ProjectiveSpace>(factor.shape).m + 1;
      if (n % 2 == 0) {
        fk.kind = KernelKind::Family;
        fk.representative_lambda = balanced_lambda(n);
        parts.push_back(factor.name() + ": unitary orbit of the diagonal forms with all |lambda_i| equal, e.g. lambda = " +
                        format_vector(fk.representative_lambda));
      } else {
        fk.kind = KernelKind::Empty;
        parts.push_back(factor.name() + ": only 0 (constant |lambda_i| contradicts sum lambda_i = 0 in odd size)");
      }
    }
    out.factors.push_back(std::move(fk));
  }

  const bool all_full = std::all_of(out.factors.begin(), out.factors.end(),
                                    [](const FactorKernel& k) { return k.kind == KernelKind::Full; });
  const bool all_empty = std::all_of(out.factors.begin(), out.factors.end(),
                                     [](const FactorKernel& k) { return k.kind == KernelKind::Empty; });
  out.kind = all_empty ? KernelKind::Empty : all_full ? KernelKind::Full : KernelKind::Family;

  for (const auto& fk : out.factors) {
    if (fk.kind == KernelKind::Empty) continue;
    if (fk.kind == KernelKind::Full) {
      out.representative.assign(basis.size(), 0);
      for (std::size_t a = 0; a < basis.size(); ++a) {
        if (basis.element(a).factor == fk.factor) {
          out.representative[a] = 1;
          break;
        }
      }
    } else {
      out.representative = basis.diagonal_coordinates(fk.factor, fk.representative_lambda);
      out.representative_lambda = fk.representative_lambda;
    }
    break;
  }

  std::string description;
  for (const auto& p : parts) description += (description.empty() ? "" : "; ") + p;
  if (d.is_product()) description += "; cross terms vanish because every factor eigenfunction has zero mean";
  out.description = description;
  return out;
}

}  // namespace

KernelFamily kernel_family(const ManifoldDescriptor& d) {
  if (weak_rigidity_check(d).verdict == WeakRigidity::WeaklySolitonicRigid) {
    KernelFamily out;
    out.kind = KernelKind::Empty;
    out.description = "E(2mu) is trivial";
    return out;
  }
  return kernel_family_of(build_E2mu(d));
}

std::string to_string(GlobalVerdict verdict) {
  switch (verdict) {
    case GlobalVerdict::AllObstructed:
      return "ALL_OBSTRUCTED";
    case GlobalVerdict::KernelFamilyExists:
      return "KERNEL_FAMILY_EXISTS";
    case GlobalVerdict::AllUnobstructedAtOrder2:
      return "ALL_UNOBSTRUCTED_AT_ORDER_2";
    case GlobalVerdict::NoConformalDeformations:
      return "NO_CONFORMAL_DEFORMATIONS";
  }
  return "?";
}

namespace {

constexpr std::size_t kRandomSamples = 8;

void add_citations(const ManifoldDescriptor& d, RigidityReport& r) {
  r.citations.push_back("Berger-Gauduchon-Mazet 1971: spectra and first eigenfunctions of spheres and CP^m");
  const bool has_cp = std::any_of(d.factors().begin(), d.factors().end(), [](const Factor& f) {
    return std::holds_alternative<ProjectiveSpace>(f.shape);
  });
  const bool has_s2 = std::any_of(d.factors().begin(), d.factors().end(), [](const Factor& f) {
    const auto* s = std::get_if<RoundSphere>(&f.shape);
    return s && s->n == 2;
  });
  if (has_cp && !d.is_product()) r.citations.push_back("Cao-He 2013, Table 2: CP^m has no infinitesimal Einstein deformations");
  if (has_cp && has_s2 && d.is_product()) r.citations.push_back("Koiso 1982: S^2 x CP^{2n} is rigid as an Einstein metric");
}

}  // namespace

RigidityReport analyze(const ManifoldDescriptor& d) {
  RigidityReport r{d, weak_rigidity_check(d)};
  r.ied_dimension = d.ied_dimension();
  add_citations(d, r);

  if (r.weak.verdict == WeakRigidity::WeaklySolitonicRigid) {
    r.e2mu_dimension = 0;
    r.isd_dimension = r.ied_dimension.value_or(0);
    r.isd_is_lower_bound = !r.ied_dimension.has_value();
    r.verdict = GlobalVerdict::NoConformalDeformations;
    r.certificate.push_back("2mu = " + format_rational(r.weak.two_mu) + " is not a Laplace eigenvalue (exact search)");
    r.notes.push_back("every Ricci soliton close to this metric is Einstein (weak solitonic rigidity)");
    return r;
  }

  const EigenfunctionBasis basis = build_E2mu(d);
  r.e2mu_dimension = basis.size();
  r.isd_dimension = r.ied_dimension.value_or(0) + basis.size();
  r.isd_is_lower_bound = !r.ied_dimension.has_value();

  for (const auto& el : basis.elements()) {
    if (sgn(integrate_product(el.function)) != 0) throw std::logic_error("eigenfunction " + el.id + " has nonzero mean");
  }

  KernelFamily kernel = kernel_family_of(basis);

  std::optional<CubicGramTensor> tensor;
  if (basis.size() <= kAnalyzeGramLimit || kernel.kind == KernelKind::Full) {
    tensor = gram_tensor(basis);
    r.gram = GramSummary{tensor->entries().size(), tensor->nonzero_count()};
  }

  switch (kernel.kind) {
    case KernelKind::Empty:
      r.verdict = GlobalVerdict::AllObstructed;
      for (const auto& fk : kernel.factors) {
        const auto& f = d.factors()[fk.factor];
        r.certificate.push_back(f.name() +
                                ": by unitary invariance every v in E(2mu) is conjugate to a diagonal form "
                                "sum lambda_i |z_i|^2; the H_{1,1} part of v^2 vanishes iff all lambda_i^2 are "
                                "equal, impossible with sum lambda_i = 0 and an odd number of coordinates");
      }
      if (d.is_product()) r.certificate.push_back("cross terms between factors vanish: factor eigenfunctions have zero mean");
      break;
    case KernelKind::Full:
      r.verdict = GlobalVerdict::AllUnobstructedAtOrder2;
      if (!tensor->is_zero()) throw std::logic_error("full kernel but nonzero Gram tensor on " + d.spec());
      r.certificate.push_back("all " + std::to_string(tensor->entries().size()) +
                              " independent Gram entries vanish exactly (every element of E(2mu) is odd under the "
                              "antipodal map)");
      break;
    case KernelKind::Family: {
      r.verdict = GlobalVerdict::KernelFamilyExists;
      const auto check = obstruction_check(kernel.representative, basis);
      if (check.status != ObstructionStatus::UnobstructedAtOrder2) {
        throw std::logic_error("kernel representative is obstructed on " + d.spec());
      }
      r.certificate.push_back("representative verified exactly: T(v,v,w) = 0 for all " + std::to_string(basis.size()) +
                              " basis witnesses");
      break;
    }
  }

  // Sampled evidence: every basis element and a few seeded random vectors.
  std::mt19937_64 rng(0);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::vector<std::vector<Rational>> samples;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    std::vector<Rational> v(basis.size(), 0);
    v[a] = 1;
    samples.push_back(std::move(v));
  }
  for (std::size_t s = 0; s < kRandomSamples; ++s) {
    std::vector<Rational> v(basis.size());
    for (auto& x : v) x = coeff(rng);
    if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; })) v[0] = 1;
    samples.push_back(std::move(v));
  }
  for (const auto& v : samples) {
    const auto verdict = tensor ? obstruction_check(v, *tensor) : obstruction_check(v, basis);
    ++r.sampled;
    if (verdict.status == ObstructionStatus::Obstructed) ++r.sampled_obstructed;
  }
  if (kernel.kind == KernelKind::Empty && r.sampled_obstructed != r.sampled) {
    throw std::logic_error("empty kernel but an unobstructed sample on " + d.spec());
  }
  if (kernel.kind == KernelKind::Full && r.sampled_obstructed != 0) {
    throw std::logic_error("full kernel but an obstructed sample on " + d.spec());
  }

  r.rigid = r.verdict == GlobalVerdict::AllObstructed && r.ied_dimension == 0u;
  switch (r.verdict) {
    case GlobalVerdict::AllObstructed:
      if (r.rigid) {
        r.notes.push_back(
            "interpretation: there are no infinitesimal Einstein deformations and no infinitesimal solitonic "
            "deformation is integrable to second order; by the finite-order integrability lemma for Ricci solitons "
            "(a result from the literature, not re-proved here) the metric is rigid, i.e. isolated in the moduli "
            "space of Ricci solitons");
      } else {
        r.notes.push_back(
            "interpretation: the conformal part of the infinitesimal solitonic deformations is obstructed at second "
            "order; the Einstein deformations are not classified here, so no rigidity claim is made");
      }
      break;
    case GlobalVerdict::KernelFamilyExists:
      r.notes.push_back(
          "interpretation: the kernel family is integrable up to second order; integrability to higher order is "
          "undecided, so no rigidity claim is made");
      break;
    case GlobalVerdict::AllUnobstructedAtOrder2:
      r.notes.push_back(
          "interpretation: every infinitesimal solitonic deformation is integrable up to second order; integrability "
          "to higher order is undecided, so no rigidity claim is made");
      break;
    case GlobalVerdict::NoConformalDeformations:
      break;
  }
  if (d.is_product() && std::any_of(kernel.factors.begin(), kernel.factors.end(), [&](const FactorKernel& k) {
        return std::holds_alternative<ProjectiveSpace>(d.factors()[k.factor].shape);
      }) && std::any_of(kernel.factors.begin(), kernel.factors.end(), [](const FactorKernel& k) {
        return k.kind == KernelKind::Full;
      })) {
    r.notes.push_back(
        "note: the sphere-factor eigenfunctions give deformations integrable up to second order, so soliton "
        "rigidity of this product is undecided even where it is rigid as an Einstein metric");
  }
  r.kernel = std::move(kernel);
  return r;
}

}  // namespace solrig
