#include "solrig/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <thread>

#include "solrig/errors.hpp"
#include "solrig/laplacian.hpp"
#include "solrig/moments.hpp"
#include "solrig/obstruction.hpp"
#include "workers.hpp"

namespace solrig {

bool McEstimate::agrees_with(const Rational& exact, double sigma) const {
  return std::abs(estimate - exact.get_d()) <= sigma * standard_error;
}

namespace {

constexpr std::size_t kShards = 16;

// Double-precision copy of a polynomial for fast repeated evaluation.
class CompiledPolynomial {
 public:
  explicit CompiledPolynomial(const Polynomial& p) : layout_(p.layout()) {
    for (std::size_t b = 0; b < layout_.block_count(); ++b) {
      const auto& blk = layout_.block(b);
      for (unsigned s = 0; s < blk.slots(); ++s) {
        const bool conj = blk.kind == BlockKind::Complex && s >= blk.count;
        source_.push_back({layout_.point_offset(b) + (conj ? s - blk.count : s), conj});
      }
    }
    for (const auto& [e, c] : p.terms()) {
      Term t{{c.real().get_d(), c.imag().get_d()}, {}};
      for (std::size_t s = 0; s < e.size(); ++s) {
        if (e[s] != 0) t.factors.emplace_back(s, e[s]);
      }
      terms_.push_back(std::move(t));
    }
    values_.resize(layout_.slots());
  }

  double evaluate_real(const std::vector<std::complex<double>>& point) {
    for (std::size_t s = 0; s < source_.size(); ++s) {
      const auto& v = point[source_[s].index];
      values_[s] = source_[s].conjugate ? std::conj(v) : v;
    }
    std::complex<double> total = 0;
    for (const auto& t : terms_) {
      std::complex<double> acc = t.coefficient;
      for (const auto& [slot, power] : t.factors) {
        for (unsigned k = 0; k < power; ++k) acc *= values_[slot];
      }
      total += acc;
    }
    return total.real();
  }

 private:
  struct Source {
    std::size_t index;
    bool conjugate;
  };
  struct Term {
    std::complex<double> coefficient;
    std::vector<std::pair<std::size_t, unsigned>> factors;
  };
  Layout layout_;
  std::vector<Source> source_;
  std::vector<Term> terms_;
  std::vector<std::complex<double>> values_;
};

struct Moments {
  double count = 0;
  double mean = 0;
  double m2 = 0;

  void push(double x) {
    count += 1;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }

  // Chan et al. pairwise combination.
  void merge(const Moments& other) {
    if (other.count == 0) return;
    const double n = count + other.count;
    const double delta = other.mean - mean;
    mean += delta * other.count / n;
    m2 += other.m2 + delta * delta * count * other.count / n;
    count = n;
  }
};

Moments run_shard(const Polynomial& p, std::uint64_t seed, std::size_t shard, std::uint64_t samples) {
  CompiledPolynomial compiled(p);
  const auto& layout = p.layout();
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shard)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  std::vector<std::complex<double>> point(layout.point_size());
  std::vector<double> gauss;
  Moments acc;
  for (std::uint64_t i = 0; i < samples; ++i) {
    for (std::size_t b = 0; b < layout.block_count(); ++b) {
      const auto& blk = layout.block(b);
      const unsigned reals = blk.kind == BlockKind::Complex ? 2 * blk.count : blk.count;
      gauss.resize(reals);
      double norm2 = 0;
      for (auto& g : gauss) {
        g = normal(rng);
        norm2 += g * g;
      }
      const double inv = 1.0 / std::sqrt(norm2);
      const auto off = layout.point_offset(b);
      for (unsigned j = 0; j < blk.count; ++j) {
        point[off + j] = blk.kind == BlockKind::Complex ? std::complex<double>(gauss[2 * j] * inv, gauss[2 * j + 1] * inv)
                                                        : std::complex<double>(gauss[j] * inv, 0.0);
      }
    }
    acc.push(compiled.evaluate_real(point));
  }
  return acc;
}

}  // namespace

McEstimate mc_integrate(const Polynomial& p, const McConfig& cfg) {
  if (cfg.samples < kMinMcSamples) {
    throw std::invalid_argument("Monte-Carlo needs at least " + std::to_string(kMinMcSamples) + " samples");
  }
  std::vector<Moments> shards(kShards);
  auto work = [&](std::size_t s) {
    const std::uint64_t n = cfg.samples / kShards + (s < cfg.samples % kShards ? 1 : 0);
    shards[s] = run_shard(p, cfg.seed, s, n);
  };
  const std::size_t workers = detail::worker_count(kShards);
  if (workers == 1) {
    for (std::size_t s = 0; s < kShards; ++s) work(s);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t s = t; s < kShards; s += workers) work(s);
      });
    }
    for (auto& th : pool) th.join();
  }
  Moments total;
  for (const auto& s : shards) total.merge(s);
  McEstimate out;
  out.estimate = total.mean;
  out.standard_error = total.count > 1 ? std::sqrt(total.m2 / (total.count - 1) / total.count) : 0.0;
  return out;
}

McEstimate mc_integrate(const Polynomial& p, const ManifoldDescriptor& d, const McConfig& cfg) {
  if (!(p.layout() == d.ambient_layout())) throw DimensionMismatch("polynomial is not on the manifold's ambient layout");
  return mc_integrate(p, cfg);
}

Polynomial gradient_norm_squared(const Polynomial& p, const ManifoldDescriptor& d) {
  const auto& layout = p.layout();
  if (!(layout == d.ambient_layout())) throw DimensionMismatch("polynomial is not on the manifold's ambient layout");
  Polynomial total(layout);
  for (std::size_t b = 0; b < layout.block_count(); ++b) {
    const auto& blk = layout.block(b);
    const auto off = layout.slot_offset(b);
    Polynomial ambient(layout);
    if (blk.kind == BlockKind::Complex) {
      // (∂_x p)² + (∂_y p)² = 4 ∂_z p ∂_zb p
      for (unsigned j = 0; j < blk.count; ++j) {
        ambient += multiply(partial(p, off + j), partial(p, off + blk.count + j)) * GaussianRational(4);
      }
    } else {
      for (unsigned i = 0; i < blk.count; ++i) {
        const Polynomial di = partial(p, off + i);
        ambient += multiply(di, di);
      }
    }
    // Radial derivative on the unit sphere is the Euler operator of the block.
    Polynomial radial(layout);
    for (const auto& [e, c] : p.terms()) {
      unsigned deg = 0;
      for (unsigned s = 0; s < blk.slots(); ++s) deg += e[off + s];
      if (deg != 0) radial.add_term(e, c * GaussianRational(static_cast<long>(deg)));
    }
    Polynomial tangential = ambient - multiply(radial, radial);
    total += tangential * GaussianRational(1 / d.factors().at(b).metric_scale);
  }
  return total;
}

namespace {

GradientIdentity identity_values(const Polynomial& v, const Polynomial& w, const ManifoldDescriptor& d) {
  GradientIdentity out;
  out.lhs = integrate_pairing(gradient_norm_squared(v, d), w);
  out.rhs = d.einstein_constant() * integrate_pairing(multiply(v, v), w);
  out.equal = out.lhs == out.rhs;
  return out;
}

}  // namespace

GradientIdentity gradient_identity_check(const Polynomial& v, const Polynomial& w, const EigenfunctionBasis& basis) {
  if (!basis.coordinates_of(v)) throw std::invalid_argument("v is not in E(2mu): " + to_string(v));
  if (!basis.coordinates_of(w)) throw std::invalid_argument("w is not in E(2mu): " + to_string(w));
  return identity_values(v, w, basis.manifold());
}

GradientIdentity gradient_identity_check(const Polynomial& v, const Polynomial& w, const ManifoldDescriptor& d) {
  return gradient_identity_check(v, w, build_E2mu(d));
}

namespace {

[[noreturn]] void fail(const std::string& item, const std::string& why, const Polynomial& offender) {
  throw IdentityFailure(item + ": " + why + ": " + to_string(offender));
}

bool is_odd_in_block(const Polynomial& p, std::size_t block) {
  const auto& layout = p.layout();
  const auto off = layout.slot_offset(block);
  for (const auto& [e, c] : p.terms()) {
    unsigned deg = 0;
    for (unsigned s = 0; s < layout.block(block).slots(); ++s) deg += e[off + s];
    if (deg % 2 == 0) return false;
  }
  return true;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 5);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

}  // namespace

SuiteReport identity_suite(const ManifoldDescriptor& d, std::uint64_t seed) {
  SuiteReport report;
  report.manifold = d.spec();
  if (!spectrum_contains(d, 2 * d.einstein_constant()).contains) {
    throw UnsupportedManifold("identity suite needs 2mu in the spectrum; " + d.spec() + " is weakly rigid");
  }
  const EigenfunctionBasis basis = build_E2mu(d);
  const auto& factors = d.factors();

  {  // (a)
    for (const auto& el : basis.elements()) {
      if (!flat_laplacian(el.function).is_zero()) fail("(a) harmonicity", "flat Laplacian is nonzero", el.function);
      const bool projective = std::holds_alternative<ProjectiveSpace>(factors[el.factor].shape);
      if (projective) {
        const auto bd = el.function.bidegree(el.factor);
        if (!bd || !(*bd == Bidegree{1, 1})) fail("(a) harmonicity", "bidegree is not (1,1)", el.function);
      } else if (el.function.block_degree(el.factor) != 1u) {
        fail("(a) harmonicity", "not a linear function", el.function);
      }
    }
    report.items.push_back({"(a) flat-harmonic, correct degree", ItemStatus::Passed,
                            std::to_string(basis.size()) + " basis elements"});
  }

  {  // (b)
    std::mt19937_64 rng(seed);
    std::size_t checked = 0;
    for (const auto& f : factors) {
      const auto* cp = std::get_if<ProjectiveSpace>(&f.shape);
      if (!cp) continue;
      const unsigned n = cp->m + 1;
      const Layout layout = Layout::complex(n);
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<Rational> lambda(n);
        Rational sum = 0;
        for (unsigned i = 0; i + 1 < n; ++i) {
          lambda[i] = random_rational(rng);
          sum += lambda[i];
        }
        lambda[n - 1] = -sum;
        const Polynomial fp = diagonal_form(layout, lambda);
        std::vector<Rational> squares;
        for (const auto& l : lambda) squares.push_back(-8 * l * l);
        const Polynomial lhs = flat_laplacian(multiply(fp, fp));
        if (!(lhs == diagonal_form(layout, squares))) fail("(b) Laplacian of f^2", "mismatch", fp);
        ++checked;
      }
    }
    report.items.push_back(checked ? SuiteItem{"(b) Laplacian of f^2 = -8 sum lambda_i^2 |z_i|^2", ItemStatus::Passed,
                                               std::to_string(checked) + " random lambda"}
                                   : SuiteItem{"(b) Laplacian of f^2 = -8 sum lambda_i^2 |z_i|^2", ItemStatus::Skipped,
                                               "no Fubini-Study factor"});
  }

  {  // (c)
    std::string detail;
    for (const auto& f : factors) {
      const auto blk = f.ambient_block();
      const Layout layout({blk});
      const Polynomial r2 = radius_squared(layout);
      const Polynomial r4 = multiply(r2, r2);
      const long factor = blk.kind == BlockKind::Complex ? -8L * (blk.count + 1) : -(4L * blk.count + 8);
      if (!(flat_laplacian(r4) == r2 * GaussianRational(factor))) fail("(c) Laplacian of r^4", "mismatch", r4);
      if (!detail.empty()) detail += ", ";
      detail += (blk.kind == BlockKind::Complex ? "C^" : "R^") + std::to_string(blk.count) + ": " +
                std::to_string(factor) + " r^2";
    }
    report.items.push_back({"(c) Laplacian of r^4", ItemStatus::Passed, detail});
  }

  {  // (d)
    for (const auto& el : basis.elements()) {
      const Rational mean = integrate_product(el.function);
      if (sgn(mean) != 0) fail("(d) zero mean", "integral is " + format_rational(mean), el.function);
    }
    report.items.push_back({"(d) zero mean", ItemStatus::Passed, std::to_string(basis.size()) + " basis elements"});
  }

  {  // (e)
    std::size_t odd = 0;
    bool all_odd = true;
    for (const auto& el : basis.elements()) {
      if (std::holds_alternative<RoundSphere>(factors[el.factor].shape)) {
        if (!is_odd_in_block(el.function, el.factor)) fail("(e) antipodal antisymmetry", "not odd", el.function);
        ++odd;
      } else {
        all_odd = false;
      }
    }
    if (odd == 0) {
      report.items.push_back({"(e) antipodal antisymmetry", ItemStatus::Skipped, "no sphere factor in E(2mu)"});
    } else {
      std::string detail = std::to_string(odd) + " sphere-factor elements odd";
      if (all_odd) {
        const auto tensor = gram_tensor(basis);
        if (!tensor.is_zero()) fail("(e) antipodal antisymmetry", "Gram tensor is not zero", basis.element(0).function);
        detail += "; all " + std::to_string(tensor.entries().size()) + " Gram entries vanish";
      }
      report.items.push_back({"(e) antipodal antisymmetry", ItemStatus::Passed, detail});
    }
  }

  {  // (f)
    std::vector<Polynomial> gradients;
    std::vector<Polynomial> squares;
    for (const auto& el : basis.elements()) {
      gradients.push_back(gradient_norm_squared(el.function, d));
      squares.push_back(multiply(el.function, el.function));
    }
    std::size_t pairs = 0;
    std::size_t nonzero = 0;
    for (std::size_t a = 0; a < basis.size(); ++a) {
      for (std::size_t b = 0; b < basis.size(); ++b) {
        const Rational lhs = integrate_pairing(gradients[a], basis.element(b).function);
        const Rational rhs = d.einstein_constant() * integrate_pairing(squares[a], basis.element(b).function);
        if (lhs != rhs) {
          fail("(f) gradient identity",
               "lhs " + format_rational(lhs) + " != rhs " + format_rational(rhs) + " for v = " + basis.element(a).id +
                   ", w = " + basis.element(b).id,
               basis.element(a).function);
        }
        ++pairs;
        nonzero += sgn(lhs) != 0;
      }
    }
    report.items.push_back({"(f) gradient identity int |grad v|^2 w = mu int v^2 w", ItemStatus::Passed,
                            std::to_string(pairs) + " pairs, " + std::to_string(nonzero) + " nonzero"});
  }
  return report;
}

std::string to_text(const SuiteReport& report) {
  std::ostringstream os;
  os << "manifold: " << report.manifold << "\n";
  for (const auto& item : report.items) {
    os << (item.status == ItemStatus::Passed ? "PASS " : "SKIP ") << item.name << " - " << item.detail << "\n";
  }
  return os.str();
}

std::vector<McSpotCheck> mc_spot_checks(const EigenfunctionBasis& basis, const McConfig& cfg) {
  std::vector<McSpotCheck> out;
  if (basis.size() == 0) return out;
  auto check = [&](std::string label, const Polynomial& p) {
    McSpotCheck c;
    c.label = std::move(label);
    c.exact = integrate_product(p);
    c.estimate = mc_integrate(p, cfg);
    c.agrees = c.estimate.agrees_with(c.exact, cfg.sigma);
    out.push_back(std::move(c));
  };
  const auto& e0 = basis.element(0);
  check("mean(" + e0.id + ")", e0.function);
  const Polynomial sq0 = multiply(e0.function, e0.function);
  check("T(" + e0.id + "," + e0.id + "," + e0.id + ")", multiply(sq0, e0.function));
  if (basis.size() > 1) {
    const auto& e1 = basis.element(1);
    check("T(" + e0.id + "," + e0.id + "," + e1.id + ")", multiply(sq0, e1.function));
    check("T(" + e1.id + "," + e1.id + "," + e1.id + ")", power(e1.function, 3));
  }
  return out;
}

}  // namespace solrig
