#include "solrig/manifold.hpp"

#include <regex>

#include "solrig/errors.hpp"

namespace solrig {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Rational model_mu(const FactorShape& shape) {
  return std::visit(overloaded{[](const RoundSphere& s) { return Rational(s.n - 1); },
                               [](const ProjectiveSpace& p) { return Rational(2 * (p.m + 1)); }},
                    shape);
}

void validate(const FactorShape& shape) {
  std::visit(overloaded{[](const RoundSphere& s) {
                          if (s.n < 2) throw UnsupportedManifold("S" + std::to_string(s.n) + ": spheres need n >= 2");
                          if (sgn(s.radius) <= 0) throw UnsupportedManifold("sphere radius must be positive");
                        },
                        [](const ProjectiveSpace& p) {
                          if (p.m < 1) throw UnsupportedManifold("CP" + std::to_string(p.m) + ": need m >= 1");
                        }},
             shape);
}

std::string shape_name(const FactorShape& shape) {
  return std::visit(overloaded{[](const RoundSphere& s) {
                                 std::string out = "S" + std::to_string(s.n);
                                 if (s.radius != 1) out += "(r=" + format_rational(s.radius) + ")";
                                 return out;
                               },
                               [](const ProjectiveSpace& p) { return "CP" + std::to_string(p.m); }},
                    shape);
}

}  // namespace

unsigned Factor::real_dimension() const {
  return std::visit(overloaded{[](const RoundSphere& s) { return s.n; },
                               [](const ProjectiveSpace& p) { return 2 * p.m; }},
                    shape);
}

Rational Factor::model_einstein_constant() const { return model_mu(shape); }

Rational Factor::eigenvalue(unsigned k) const {
  Rational model = std::visit(overloaded{[k](const RoundSphere& s) { return Rational(k * (k + s.n - 1)); },
                                         [k](const ProjectiveSpace& p) { return Rational(4 * k * (k + p.m)); }},
                              shape);
  return model / metric_scale;
}

CoordinateBlock Factor::ambient_block() const {
  return std::visit(overloaded{[](const RoundSphere& s) { return CoordinateBlock{BlockKind::Real, s.n + 1}; },
                               [](const ProjectiveSpace& p) { return CoordinateBlock{BlockKind::Complex, p.m + 1}; }},
                    shape);
}

std::string Factor::name() const { return shape_name(shape); }

ManifoldDescriptor::ManifoldDescriptor(std::vector<Factor> factors) : factors_(std::move(factors)) {
  mu_ = factors_.front().einstein_constant();
}

ManifoldDescriptor ManifoldDescriptor::sphere(unsigned n, Rational radius) {
  return product({RoundSphere{n, std::move(radius)}});
}

ManifoldDescriptor ManifoldDescriptor::projective(unsigned m) { return product({ProjectiveSpace{m}}); }

ManifoldDescriptor ManifoldDescriptor::product(std::vector<FactorShape> shapes) {
  if (shapes.empty()) throw UnsupportedManifold("empty product");
  for (const auto& s : shapes) validate(s);
  // The first factor fixes the common Einstein constant.
  Rational first_scale = 1;
  if (const auto* s = std::get_if<RoundSphere>(&shapes.front())) first_scale = s->radius * s->radius;
  const Rational mu = model_mu(shapes.front()) / first_scale;
  std::vector<Factor> factors;
  for (auto& s : shapes) {
    Rational scale = model_mu(s) / mu;
    factors.push_back(Factor{std::move(s), std::move(scale)});
  }
  return ManifoldDescriptor(std::move(factors));
}

unsigned ManifoldDescriptor::real_dimension() const {
  unsigned n = 0;
  for (const auto& f : factors_) n += f.real_dimension();
  return n;
}

std::optional<unsigned> ManifoldDescriptor::ied_dimension() const {
  auto is_s2 = [](const Factor& f) {
    const auto* s = std::get_if<RoundSphere>(&f.shape);
    return s != nullptr && s->n == 2;
  };
  if (factors_.size() == 1 && std::holds_alternative<ProjectiveSpace>(factors_.front().shape)) return 0u;
  if (factors_.size() == 2 && is_s2(factors_[0]) && is_s2(factors_[1])) return 0u;
  return std::nullopt;
}

Layout ManifoldDescriptor::ambient_layout() const {
  std::vector<CoordinateBlock> blocks;
  for (const auto& f : factors_) blocks.push_back(f.ambient_block());
  return Layout(std::move(blocks));
}

std::string ManifoldDescriptor::spec() const {
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += "x";
    out += f.name();
  }
  return out;
}

ManifoldDescriptor parse_manifold(std::string_view spec) {
  static const std::regex sphere_re(R"(S(\d+)(?:\(r=([^)]+)\))?)");
  static const std::regex projective_re(R"(CP(\d+))");
  if (spec.empty()) throw ParseError("empty manifold spec");
  std::vector<FactorShape> shapes;
  std::size_t start = 0;
  while (true) {
    const auto sep = spec.find('x', start);
    const std::string token(spec.substr(start, sep == std::string_view::npos ? spec.npos : sep - start));
    std::smatch m;
    if (std::regex_match(token, m, sphere_re)) {
      Rational radius = 1;
      if (m[2].matched) {
        try {
          radius = parse_rational(m[2].str());
        } catch (const std::invalid_argument&) {
          throw ParseError("malformed radius in '" + token + "'");
        }
      }
      shapes.push_back(RoundSphere{static_cast<unsigned>(std::stoul(m[1].str())), radius});
    } else if (std::regex_match(token, m, projective_re)) {
      shapes.push_back(ProjectiveSpace{static_cast<unsigned>(std::stoul(m[1].str()))});
    } else {
      throw ParseError("malformed manifold factor '" + token + "' in '" + std::string(spec) + "'");
    }
    if (sep == std::string_view::npos) break;
    start = sep + 1;
  }
  return ManifoldDescriptor::product(std::move(shapes));
}

SpectrumMembership spectrum_contains(const ManifoldDescriptor& d, const Rational& value) {
  SpectrumMembership out;
  const auto& factors = d.factors();
  std::vector<unsigned> ks(factors.size(), 0);
  // Factor eigenvalues are nonnegative and increasing in k, so the search is
  // bounded by the remaining budget.
  auto recurse = [&](auto&& self, std::size_t f, const Rational& remaining) -> void {
    if (f == factors.size()) {
      if (sgn(remaining) == 0) out.witnesses.push_back(ks);
      return;
    }
    for (unsigned k = 0;; ++k) {
      Rational lambda = factors[f].eigenvalue(k);
      if (lambda > remaining) break;
      ks[f] = k;
      self(self, f + 1, remaining - lambda);
    }
    ks[f] = 0;
  };
  if (sgn(value) >= 0) recurse(recurse, 0, value);
  out.contains = !out.witnesses.empty();
  return out;
}

std::string to_string(WeakRigidity verdict) {
  switch (verdict) {
    case WeakRigidity::WeaklySolitonicRigid:
      return "WEAKLY_SOLITONIC_RIGID";
    case WeakRigidity::InconclusiveHas2Mu:
      return "INCONCLUSIVE_HAS_2MU";
  }
  return "?";
}

WeakRigidityResult weak_rigidity_check(const ManifoldDescriptor& d) {
  WeakRigidityResult out;
  out.two_mu = 2 * d.einstein_constant();
  auto membership = spectrum_contains(d, out.two_mu);
  out.verdict = membership.contains ? WeakRigidity::InconclusiveHas2Mu : WeakRigidity::WeaklySolitonicRigid;
  out.witnesses = std::move(membership.witnesses);
  return out;
}

}  // namespace solrig
