#include "solrig/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <unordered_map>

#include "solrig/errors.hpp"

namespace solrig {

Layout::Layout(std::vector<CoordinateBlock> blocks) : blocks_(std::move(blocks)) {
  for (const auto& b : blocks_) {
    slot_offsets_.push_back(slots_);
    point_offsets_.push_back(point_size_);
    slots_ += b.slots();
    point_size_ += b.count;
  }
}

std::string Layout::variable_name(std::size_t slot) const {
  for (std::size_t b = blocks_.size(); b-- > 0;) {
    if (slot < slot_offsets_[b]) continue;
    const auto& blk = blocks_[b];
    std::size_t local = slot - slot_offsets_[b];
    std::string name;
    if (blk.kind == BlockKind::Real) {
      name = "x" + std::to_string(local + 1);
    } else if (local < blk.count) {
      name = "z" + std::to_string(local + 1);
    } else {
      name = "zb" + std::to_string(local - blk.count + 1);
    }
    if (blocks_.size() > 1) name = "pr" + std::to_string(b + 1) + "." + name;
    return name;
  }
  throw DimensionMismatch("slot out of range");
}

bool GradedLexOrder::operator()(const Exponents& a, const Exponents& b) const {
  auto da = std::accumulate(a.begin(), a.end(), 0u);
  auto db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Polynomial::Polynomial(Layout layout) : layout_(std::move(layout)) {}

Polynomial Polynomial::constant(Layout layout, const GaussianRational& value) {
  Polynomial p(std::move(layout));
  p.add_term(Exponents(p.layout_.slots(), 0), value);
  return p;
}

Polynomial Polynomial::monomial(Layout layout, Exponents exponents, const GaussianRational& coefficient) {
  if (exponents.size() != layout.slots()) {
    throw DimensionMismatch("exponent vector length does not match the layout");
  }
  Polynomial p(std::move(layout));
  p.add_term(exponents, coefficient);
  return p;
}

GaussianRational Polynomial::coefficient(const Exponents& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? GaussianRational{} : it->second;
}

void Polynomial::add_term(const Exponents& exponents, const GaussianRational& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Polynomial::require_same_layout(const Polynomial& other, const char* what) const {
  if (!(layout_ == other.layout_)) {
    throw DimensionMismatch(std::string(what) + ": polynomials live on different coordinate layouts");
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_layout(other, "add");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_layout(other, "subtract");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const GaussianRational& scalar) {
  if (scalar.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

std::optional<Bidegree> Polynomial::bidegree(std::size_t block) const {
  const auto& blk = layout_.block(block);
  if (blk.kind != BlockKind::Complex) throw DegreeMismatch("bidegree requires a complex block");
  std::optional<Bidegree> common;
  const auto off = layout_.slot_offset(block);
  for (const auto& [e, c] : terms_) {
    Bidegree d;
    for (unsigned j = 0; j < blk.count; ++j) {
      d.holomorphic += e[off + j];
      d.antiholomorphic += e[off + blk.count + j];
    }
    if (common && !(*common == d)) return std::nullopt;
    common = d;
  }
  return common;
}

std::optional<unsigned> Polynomial::block_degree(std::size_t block) const {
  const auto off = layout_.slot_offset(block);
  const auto width = layout_.block(block).slots();
  std::optional<unsigned> common;
  for (const auto& [e, c] : terms_) {
    unsigned d = std::accumulate(e.begin() + off, e.begin() + off + width, 0u);
    if (common && *common != d) return std::nullopt;
    common = d;
  }
  return common;
}

bool Polynomial::has_real_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
}

Polynomial multiply(const Polynomial& p, const Polynomial& q) {
  if (!(p.layout() == q.layout())) {
    throw DimensionMismatch("multiply: polynomials live on different coordinate layouts");
  }
  Polynomial out(p.layout());
  Exponents e(p.layout().slots());
  for (const auto& [ep, cp] : p.terms()) {
    for (const auto& [eq, cq] : q.terms()) {
      for (std::size_t s = 0; s < e.size(); ++s) e[s] = ep[s] + eq[s];
      out.add_term(e, cp * cq);
    }
  }
  return out;
}

Polynomial power(const Polynomial& p, unsigned exponent) {
  Polynomial result = Polynomial::constant(p.layout(), 1);
  for (unsigned i = 0; i < exponent; ++i) result = multiply(result, p);
  return result;
}

namespace {

std::size_t complex_slot(const Layout& layout, unsigned j, std::size_t block, bool conjugate) {
  const auto& blk = layout.block(block);
  if (blk.kind != BlockKind::Complex) throw DimensionMismatch("block is not complex");
  if (j < 1 || j > blk.count) throw DimensionMismatch("complex coordinate index out of range");
  return layout.slot_offset(block) + (conjugate ? blk.count : 0) + (j - 1);
}

Polynomial single_variable(const Layout& layout, std::size_t slot) {
  Exponents e(layout.slots(), 0);
  e[slot] = 1;
  return Polynomial::monomial(layout, std::move(e));
}

}  // namespace

Polynomial z(const Layout& layout, unsigned j, std::size_t block) {
  return single_variable(layout, complex_slot(layout, j, block, false));
}

Polynomial zbar(const Layout& layout, unsigned j, std::size_t block) {
  return single_variable(layout, complex_slot(layout, j, block, true));
}

Polynomial abs2(const Layout& layout, unsigned j, std::size_t block) {
  Exponents e(layout.slots(), 0);
  e[complex_slot(layout, j, block, false)] = 1;
  e[complex_slot(layout, j, block, true)] = 1;
  return Polynomial::monomial(layout, std::move(e));
}

Polynomial coordinate(const Layout& layout, unsigned i, std::size_t block) {
  const auto& blk = layout.block(block);
  if (blk.kind != BlockKind::Real) throw DimensionMismatch("block is not real");
  if (i < 1 || i > blk.count) throw DimensionMismatch("real coordinate index out of range");
  return single_variable(layout, layout.slot_offset(block) + i - 1);
}

Polynomial radius_squared(const Layout& layout, std::size_t block) {
  const auto& blk = layout.block(block);
  Polynomial r2(layout);
  for (unsigned i = 1; i <= blk.count; ++i) {
    if (blk.kind == BlockKind::Complex) {
      r2 += abs2(layout, i, block);
    } else {
      Exponents e(layout.slots(), 0);
      e[layout.slot_offset(block) + i - 1] = 2;
      r2.add_term(e, 1);
    }
  }
  return r2;
}

Polynomial diagonal_form(const Layout& layout, std::span<const Rational> weights, std::size_t block) {
  if (weights.size() != layout.block(block).count) {
    throw DimensionMismatch("weight vector length does not match the complex block");
  }
  Polynomial f(layout);
  for (unsigned i = 0; i < weights.size(); ++i) f += abs2(layout, i + 1, block) * GaussianRational(weights[i]);
  return f;
}

Polynomial embed(const Polynomial& p, const Layout& target, std::size_t block) {
  if (p.layout().block_count() != 1 || !(p.layout().block(0) == target.block(block))) {
    throw DimensionMismatch("embed: source must be a single block matching the target block");
  }
  Polynomial out(target);
  const auto off = target.slot_offset(block);
  Exponents e(target.slots(), 0);
  for (const auto& [ep, c] : p.terms()) {
    std::copy(ep.begin(), ep.end(), e.begin() + off);
    out.add_term(e, c);
  }
  return out;
}

Polynomial partial(const Polynomial& p, std::size_t slot) {
  if (slot >= p.layout().slots()) throw DimensionMismatch("partial: slot out of range");
  Polynomial out(p.layout());
  for (const auto& [e, c] : p.terms()) {
    if (e[slot] == 0) continue;
    Exponents d = e;
    --d[slot];
    out.add_term(d, c * GaussianRational(static_cast<long>(e[slot])));
  }
  return out;
}

namespace {

// Maps each exponent slot to its point entry and whether it is conjugated.
struct SlotSource {
  std::size_t point_index;
  bool conjugate;
};

std::vector<SlotSource> slot_sources(const Layout& layout) {
  std::vector<SlotSource> out(layout.slots());
  for (std::size_t b = 0; b < layout.block_count(); ++b) {
    const auto& blk = layout.block(b);
    for (unsigned s = 0; s < blk.slots(); ++s) {
      const bool conj = blk.kind == BlockKind::Complex && s >= blk.count;
      const unsigned local = conj ? s - blk.count : s;
      out[layout.slot_offset(b) + s] = {layout.point_offset(b) + local, conj};
    }
  }
  return out;
}

template <class Scalar, class Conj, class FromCoeff>
Scalar evaluate_impl(const Polynomial& p, std::span<const Scalar> point, Conj conj, FromCoeff from_coeff) {
  const auto& layout = p.layout();
  if (point.size() != layout.point_size()) throw DimensionMismatch("evaluate: point has the wrong length");
  const auto sources = slot_sources(layout);

  std::vector<unsigned> max_exp(layout.slots(), 0);
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t s = 0; s < e.size(); ++s) max_exp[s] = std::max(max_exp[s], e[s]);
  }
  // powers[s][k] = (slot value)^k
  std::vector<std::vector<Scalar>> powers(layout.slots());
  for (std::size_t s = 0; s < powers.size(); ++s) {
    Scalar base = sources[s].conjugate ? conj(point[sources[s].point_index]) : point[sources[s].point_index];
    powers[s].reserve(max_exp[s] + 1);
    powers[s].push_back(Scalar(1));
    for (unsigned k = 1; k <= max_exp[s]; ++k) powers[s].push_back(powers[s].back() * base);
  }

  Scalar total(0);
  for (const auto& [e, c] : p.terms()) {
    Scalar term = from_coeff(c);
    for (std::size_t s = 0; s < e.size(); ++s) {
      if (e[s] != 0) term = term * powers[s][e[s]];
    }
    total = total + term;
  }
  return total;
}

}  // namespace

std::complex<double> evaluate(const Polynomial& p, std::span<const std::complex<double>> point) {
  return evaluate_impl<std::complex<double>>(
      p, point, [](const std::complex<double>& v) { return std::conj(v); },
      [](const GaussianRational& c) { return std::complex<double>(c.real().get_d(), c.imag().get_d()); });
}

GaussianRational evaluate(const Polynomial& p, std::span<const GaussianRational> point) {
  return evaluate_impl<GaussianRational>(
      p, point, [](const GaussianRational& v) { return v.conj(); }, [](const GaussianRational& c) { return c; });
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    // Pull the sign out of real and pure-imaginary coefficients.
    bool negative = false;
    std::string coeff;
    if (c.is_real()) {
      negative = sgn(c.real()) < 0;
      coeff = format_rational(abs(c.real()));
    } else if (sgn(c.real()) == 0) {
      negative = sgn(c.imag()) < 0;
      coeff = format_rational(abs(c.imag())) + "*I";
    } else {
      coeff = format_gaussian(c);
    }
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    out += coeff;
    for (std::size_t s = 0; s < e.size(); ++s) {
      if (e[s] == 0) continue;
      out += "*" + p.layout().variable_name(s);
      if (e[s] > 1) out += "^" + std::to_string(e[s]);
    }
  }
  return out;
}

namespace {

class PolynomialParser {
 public:
  PolynomialParser(std::string_view text, const Layout& layout) : text_(text), layout_(layout) {
    for (std::size_t s = 0; s < layout.slots(); ++s) slots_.emplace(layout.variable_name(s), s);
  }

  Polynomial parse() {
    Polynomial result(layout_);
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      ++pos_;
    }
    while (true) {
      auto [e, c] = parse_term();
      result.add_term(e, negative ? -c : c);
      skip_ws();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') fail("expected '+' or '-'");
      negative = peek() == '-';
      ++pos_;
    }
    return result;
  }

 private:
  std::pair<Exponents, GaussianRational> parse_term() {
    Exponents e(layout_.slots(), 0);
    GaussianRational coeff = 1;
    bool first = true;
    while (true) {
      skip_ws();
      if (at_end()) fail("unexpected end of input");
      const char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        if (!first) fail("numeric factor must lead the term");
        coeff = parse_number();
      } else if (ch == '(') {
        if (!first) fail("complex coefficient must lead the term");
        coeff = parse_complex();
      } else {
        std::string name = parse_identifier();
        if (name == "I") {
          coeff *= GaussianRational::imaginary_unit();
        } else {
          auto it = slots_.find(name);
          if (it == slots_.end()) fail("unknown variable '" + name + "'");
          unsigned power = 1;
          skip_ws();
          if (!at_end() && peek() == '^') {
            ++pos_;
            skip_ws();
            power = static_cast<unsigned>(parse_number().get_d());
          }
          e[it->second] += power;
        }
      }
      first = false;
      skip_ws();
      if (at_end() || peek() != '*') break;
      ++pos_;
    }
    return {std::move(e), std::move(coeff)};
  }

  Rational parse_number() {
    std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/')) ++pos_;
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const std::invalid_argument& err) {
      fail(err.what());
    }
  }

  GaussianRational parse_complex() {
    ++pos_;  // '('
    skip_ws();
    bool neg_re = false;
    if (!at_end() && (peek() == '-' || peek() == '+')) {
      neg_re = peek() == '-';
      ++pos_;
    }
    Rational re = parse_number();
    if (neg_re) re = -re;
    skip_ws();
    if (at_end() || (peek() != '+' && peek() != '-')) fail("expected sign in complex coefficient");
    const bool neg_im = peek() == '-';
    ++pos_;
    skip_ws();
    Rational im = parse_number();
    if (neg_im) im = -im;
    skip_ws();
    if (at_end() || peek() != '*') fail("expected '*I' in complex coefficient");
    ++pos_;
    skip_ws();
    if (parse_identifier() != "I") fail("expected 'I' in complex coefficient");
    skip_ws();
    if (at_end() || peek() != ')') fail("expected ')'");
    ++pos_;
    return {re, im};
  }

  std::string parse_identifier() {
    std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '.')) ++pos_;
    if (start == pos_) fail(std::string("unexpected character '") + peek() + "'");
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + why);
  }

  std::string_view text_;
  const Layout& layout_;
  std::unordered_map<std::string, std::size_t> slots_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const Layout& layout) {
  std::string_view trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
  if (trimmed == "0") return Polynomial(layout);
  return PolynomialParser(trimmed, layout).parse();
}

}  // namespace solrig
