// solrig: rigidity analysis of model Einstein manifolds from the command line.
//
//   solrig analyze CP4
//   solrig check CP2 --lambda 1,1,-2
//   solrig verify CP4 --seed 7
//   solrig gram S2xS2 --format csv
//   solrig moments --complex 3 1,1,1

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "solrig/eigenbasis.hpp"
#include "solrig/errors.hpp"
#include "solrig/manifold.hpp"
#include "solrig/moments.hpp"
#include "solrig/obstruction.hpp"
#include "solrig/report.hpp"
#include "solrig/verify.hpp"

namespace {

enum Exit { kOk = 0, kSuiteFailure = 1, kUsage = 2, kUnsupported = 3 };

struct CliConfig {
  std::string command;
  std::string manifold;
  std::string format = "human";
  std::uint64_t seed = 0;
  std::uint64_t samples = 1'000'000;
  std::string out;
  std::string lambda;
  std::string coords;
  unsigned complex_count = 0;
  unsigned real_count = 0;
  std::string alpha;
  std::string beta;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<unsigned> parse_exponents(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<unsigned>(v));
    } catch (const std::exception&) {
      throw solrig::ParseError("bad exponent '" + item + "'");
    }
  }
  if (out.empty()) throw solrig::ParseError("empty exponent list");
  return out;
}

const solrig::ProjectiveSpace& single_projective(const solrig::ManifoldDescriptor& d) {
  const auto* cp = d.is_product() ? nullptr : std::get_if<solrig::ProjectiveSpace>(&d.factors()[0].shape);
  if (!cp) throw UsageError("--lambda needs a single CPm, got " + d.spec());
  return *cp;
}

std::string run_analyze(const CliConfig& cfg) {
  const auto report = solrig::analyze(solrig::parse_manifold(cfg.manifold));
  if (cfg.format == "structured-text") return solrig::to_structured_text(report);
  if (cfg.format == "csv") throw UsageError("analyze supports --format human or structured-text");
  return solrig::to_human(report);
}

std::string run_check(const CliConfig& cfg) {
  if (cfg.lambda.empty() == cfg.coords.empty()) throw UsageError("check needs exactly one of --lambda or --coords");
  const auto d = solrig::parse_manifold(cfg.manifold);
  std::ostringstream os;
  os << "manifold: " << d.spec() << "\n";
  if (!cfg.lambda.empty()) {
    const auto& cp = single_projective(d);
    const auto lambda = solrig::parse_rational_list(cfg.lambda);
    const auto verdict = solrig::diagonal_criterion(lambda, cp.m);
    const auto basis = solrig::build_E2mu(d);
    os << solrig::verdict_to_text(verdict, basis);
    os << "deformation: " << solrig::to_string(solrig::diagonal_form(basis.layout(), lambda)) << "\n";
    const auto full = solrig::obstruction_check(basis.diagonal_coordinates(0, lambda), basis);
    if (full.status != verdict.status) throw std::logic_error("diagonal and full-basis checks disagree");
    std::size_t zeros = 0;
    for (const auto& p : full.pairings) zeros += sgn(p) == 0;
    os << "basis_check: " << solrig::to_string(full.status) << ", zero_pairings " << zeros << " of "
       << full.pairings.size() << "\n";
    return os.str();
  }
  const auto basis = solrig::build_E2mu(d);
  const auto coords = solrig::parse_rational_list(cfg.coords);
  os << solrig::verdict_to_text(solrig::obstruction_check(coords, basis), basis);
  return os.str();
}

int run_verify(const CliConfig& cfg, std::string& text) {
  const auto d = solrig::parse_manifold(cfg.manifold);
  std::ostringstream os;
  int code = kOk;
  try {
    os << solrig::to_text(solrig::identity_suite(d, cfg.seed));
  } catch (const solrig::IdentityFailure& e) {
    os << "FAIL " << e.what() << "\n";
    text = os.str();
    return kSuiteFailure;
  }
  solrig::McConfig mc;
  mc.seed = cfg.seed;
  mc.samples = cfg.samples;
  const auto basis = solrig::build_E2mu(d);
  for (const auto& c : solrig::mc_spot_checks(basis, mc)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "estimate %.6f +- %.6f", c.estimate.estimate, c.estimate.standard_error);
    os << (c.agrees ? "PASS " : "FAIL ") << "Monte-Carlo " << c.label << " exact " << solrig::format_rational(c.exact)
       << ", " << buf << " (" << mc.samples << " samples, seed " << mc.seed << ")\n";
    if (!c.agrees) code = kSuiteFailure;
  }
  os << "result: " << (code == kOk ? "PASS" : "FAIL") << "\n";
  text = os.str();
  return code;
}

std::string run_gram(const CliConfig& cfg) {
  const auto basis = solrig::build_E2mu(solrig::parse_manifold(cfg.manifold));
  const auto tensor = solrig::gram_tensor(basis);
  if (cfg.format == "csv") return solrig::gram_to_csv(tensor, basis);
  return solrig::gram_to_text(tensor, basis);
}

std::string run_moments(const CliConfig& cfg) {
  if ((cfg.complex_count == 0) == (cfg.real_count == 0)) throw UsageError("moments needs one of --complex M or --real N");
  const auto alpha = parse_exponents(cfg.alpha);
  const unsigned count = cfg.complex_count ? cfg.complex_count : cfg.real_count;
  if (alpha.size() != count) {
    throw solrig::DimensionMismatch("expected " + std::to_string(count) + " exponents, got " +
                                    std::to_string(alpha.size()));
  }
  solrig::Rational value;
  if (cfg.complex_count) {
    const auto beta = cfg.beta.empty() ? alpha : parse_exponents(cfg.beta);
    if (beta.size() != count) throw solrig::DimensionMismatch("beta has the wrong length");
    value = solrig::complex_monomial_moment(count, alpha, beta);
  } else {
    if (!cfg.beta.empty()) throw UsageError("--real takes a single exponent vector");
    value = solrig::real_monomial_moment(count, alpha);
  }
  return solrig::format_rational(value) + "\n";
}

void emit(const CliConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + cfg.out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CliConfig cfg;
  CLI::App app{"Rigidity analysis of model Einstein manifolds"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "human, structured-text or csv")
      ->check(CLI::IsMember({"human", "structured-text", "csv"}));
  app.add_option("--seed", cfg.seed, "Monte-Carlo seed");
  app.add_option("--samples", cfg.samples, "Monte-Carlo sample count");
  app.add_option("--out", cfg.out, "write output to this file");

  auto* analyze = app.add_subcommand("analyze", "full rigidity report");
  analyze->add_option("manifold", cfg.manifold)->required();

  auto* check = app.add_subcommand("check", "obstruction verdict for one deformation");
  check->add_option("manifold", cfg.manifold)->required();
  check->add_option("--lambda", cfg.lambda, "diagonal eigenvalues, comma separated");
  check->add_option("--coords", cfg.coords, "coordinates in the E(2mu) basis");

  auto* verify = app.add_subcommand("verify", "exact identity suite and Monte-Carlo spot checks");
  verify->add_option("manifold", cfg.manifold)->required();

  auto* gram = app.add_subcommand("gram", "cubic Gram tensor of E(2mu)");
  gram->add_option("manifold", cfg.manifold)->required();

  auto* moments = app.add_subcommand("moments", "normalized sphere moment of a monomial");
  moments->add_option("--complex", cfg.complex_count, "coordinate count M of C^M");
  moments->add_option("--real", cfg.real_count, "coordinate count N of R^N");
  moments->add_option("alpha", cfg.alpha, "exponents")->required();
  moments->add_option("beta", cfg.beta, "conjugate exponents (defaults to alpha)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    std::string text;
    int code = kOk;
    if (*analyze) {
      text = run_analyze(cfg);
    } else if (*check) {
      text = run_check(cfg);
    } else if (*verify) {
      if (cfg.samples < solrig::kMinMcSamples) throw UsageError("--samples must be at least 10000");
      code = run_verify(cfg, text);
    } else if (*gram) {
      text = run_gram(cfg);
    } else {
      text = run_moments(cfg);
    }
    emit(cfg, text);
    return code;
  } catch (const solrig::UnsupportedManifold& e) {
    std::cerr << "unsupported manifold: " << e.what() << "\n";
    return kUnsupported;
  } catch (const solrig::IdentityFailure& e) {
    std::cerr << "identity failure: " << e.what() << "\n";
    return kSuiteFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kSuiteFailure;
  }
}
