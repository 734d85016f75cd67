#include "solrig/report.hpp"

#include <sstream>

namespace solrig {

namespace {

std::string join_witness(const std::vector<unsigned>& ks) {
  std::string out = "(";
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(ks[i]);
  }
  return out + ")";
}

std::string rational_list(std::span<const Rational> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_rational(v[i]);
  }
  return out;
}

std::string isd_text(const RigidityReport& r) {
  return (r.isd_is_lower_bound ? ">=" : "") + std::to_string(r.isd_dimension);
}

}  // namespace

std::string to_structured_text(const RigidityReport& r) {
  std::ostringstream os;
  os << "schema: " << kReportSchema << "\n";
  os << "manifold: " << r.manifold.spec() << "\n";
  os << "real_dimension: " << r.manifold.real_dimension() << "\n";
  os << "einstein_constant: " << format_rational(r.manifold.einstein_constant()) << "\n";
  os << "soliton_scale: " << format_rational(r.manifold.soliton_scale()) << "\n";
  os << "two_mu: " << format_rational(r.weak.two_mu) << "\n";
  os << "weak_rigidity: " << to_string(r.weak.verdict) << "\n";
  os << "spectrum_witnesses:";
  for (const auto& w : r.weak.witnesses) os << " " << join_witness(w);
  os << "\n";
  os << "dim_E2mu: " << r.e2mu_dimension << "\n";
  os << "dim_IED: " << (r.ied_dimension ? std::to_string(*r.ied_dimension) : "unknown") << "\n";
  os << "dim_ISD: " << isd_text(r) << "\n";
  os << "verdict: " << to_string(r.verdict) << "\n";
  os << "rigid: " << (r.rigid ? "true" : "false") << "\n";
  os << "kernel_family: " << (r.kernel ? to_string(r.kernel->kind) : "n/a") << "\n";
  if (r.kernel) {
    os << "kernel_description: " << r.kernel->description << "\n";
    os << "kernel_representative: " << rational_list(r.kernel->representative) << "\n";
    os << "kernel_representative_lambda: " << rational_list(r.kernel->representative_lambda) << "\n";
  }
  if (r.gram) {
    os << "gram_independent_entries: " << r.gram->independent_entries << "\n";
    os << "gram_nonzero_entries: " << r.gram->nonzero_entries << "\n";
  }
  os << "sampled_deformations: " << r.sampled << "\n";
  os << "sampled_obstructed: " << r.sampled_obstructed << "\n";
  for (const auto& c : r.certificate) os << "certificate: " << c << "\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  for (const auto& c : r.citations) os << "citation: " << c << "\n";
  return os.str();
}

std::string to_human(const RigidityReport& r) {
  std::ostringstream os;
  os << "Manifold " << r.manifold.spec() << " (real dimension " << r.manifold.real_dimension() << ")\n";
  os << "  Einstein constant mu = " << format_rational(r.manifold.einstein_constant())
     << ", tau = " << format_rational(r.manifold.soliton_scale()) << "\n";
  os << "  weak rigidity: " << to_string(r.weak.verdict) << " (2mu = " << format_rational(r.weak.two_mu);
  if (!r.weak.witnesses.empty()) {
    os << ", eigenvalue indices";
    for (const auto& w : r.weak.witnesses) os << " " << join_witness(w);
  }
  os << ")\n";
  os << "  dim E(2mu) = " << r.e2mu_dimension << ", dim IED = "
     << (r.ied_dimension ? std::to_string(*r.ied_dimension) : "unknown") << ", dim ISD = " << isd_text(r) << "\n";
  os << "  verdict: " << to_string(r.verdict);
  if (r.rigid) os << " => rigid";
  os << "\n";
  if (r.kernel) {
    os << "  kernel family: " << to_string(r.kernel->kind) << " - " << r.kernel->description << "\n";
    if (!r.kernel->representative_lambda.empty()) {
      os << "  representative lambda = (" << rational_list(r.kernel->representative_lambda) << ")\n";
    }
  }
  if (r.gram) {
    os << "  Gram tensor: " << r.gram->nonzero_entries << " nonzero of " << r.gram->independent_entries
       << " independent entries\n";
  }
  if (r.sampled) os << "  sampled deformations: " << r.sampled_obstructed << " of " << r.sampled << " obstructed\n";
  for (const auto& c : r.certificate) os << "  certificate: " << c << "\n";
  for (const auto& n : r.notes) os << "  " << n << "\n";
  for (const auto& c : r.citations) os << "  [" << c << "]\n";
  return os.str();
}

std::string gram_to_csv(const CubicGramTensor& tensor, const EigenfunctionBasis& basis) {
  std::ostringstream os;
  os << "a,b,c,id_a,id_b,id_c,value\n";
  const auto d = tensor.dimension();
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      for (std::size_t c = b; c < d; ++c) {
        os << a << "," << b << "," << c << "," << basis.element(a).id << "," << basis.element(b).id << ","
           << basis.element(c).id << "," << format_rational(tensor.at(a, b, c)) << "\n";
      }
    }
  }
  return os.str();
}

std::string gram_to_text(const CubicGramTensor& tensor, const EigenfunctionBasis& basis) {
  std::ostringstream os;
  const auto total = tensor.entries().size();
  const auto nonzero = tensor.nonzero_count();
  os << "manifold: " << basis.manifold().spec() << "\n";
  os << "dimension: " << tensor.dimension() << "\n";
  os << "independent_entries: " << total << "\n";
  os << "zero_entries: " << total - nonzero << "\n";
  os << "nonzero_entries: " << nonzero << "\n";
  const auto d = tensor.dimension();
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      for (std::size_t c = b; c < d; ++c) {
        const auto& t = tensor.at(a, b, c);
        if (sgn(t) == 0) continue;
        os << "T[" << basis.element(a).id << "," << basis.element(b).id << "," << basis.element(c).id
           << "] = " << format_rational(t) << "\n";
      }
    }
  }
  return os.str();
}

std::string verdict_to_text(const ObstructionVerdict& v, const EigenfunctionBasis& basis) {
  std::ostringstream os;
  os << "status: " << to_string(v.status) << "\n";
  if (!v.lambda.empty()) os << "lambda: " << rational_list(v.lambda) << "\n";
  if (!v.coordinates.empty()) {
    os << "coordinates: " << rational_list(v.coordinates) << "\n";
    os << "deformation: " << to_string(basis.combine(v.coordinates)) << "\n";
  }
  if (v.witness_index) {
    const auto& w = basis.element(*v.witness_index);
    bool self = false;
    if (!v.coordinates.empty()) {
      std::vector<Rational> unit(basis.size(), 0);
      unit[*v.witness_index] = 1;
      self = unit == v.coordinates;
    }
    os << "witness: " << w.id << (self ? " (self)" : "") << " = " << to_string(w.function) << "\n";
  } else if (!v.witness_lambda.empty()) {
    const bool self = v.witness_lambda == v.lambda;
    os << "witness_lambda: " << rational_list(v.witness_lambda) << (self ? " (self)" : "") << "\n";
  }
  os << "value: " << format_rational(v.value) << "\n";
  if (!v.pairings.empty()) {
    std::size_t zeros = 0;
    for (const auto& p : v.pairings) zeros += sgn(p) == 0;
    os << "zero_pairings: " << zeros << " of " << v.pairings.size() << "\n";
  }
  return os.str();
}

}  // namespace solrig
