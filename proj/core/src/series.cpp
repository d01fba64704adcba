#include "ringcert/series.hpp"

#include <algorithm>

#include "ringcert/errors.hpp"

namespace ringcert::series {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void require_compatible(const TruncatedElement& a, const TruncatedElement& b, std::string_view op) {
  require_same_ring(a.coefficient_ring(), b.coefficient_ring(), op);
  if (a.precision() != b.precision())
    throw StructuralError(std::string(op) + ": truncation orders differ (" + std::to_string(a.precision()) +
                          " vs " + std::to_string(b.precision()) + ")");
}

}  // namespace

GenericSeries GenericSeries::make_generic(std::uint64_t seed, std::string label, std::size_t precision) {
  if (precision < 2) throw StructuralError("make_generic: precision must be at least 2");
  GenericSeries s;
  s.seed_ = seed;
  s.precision_ = precision;
  std::uint64_t state = seed ^ fnv1a(label);
  s.label_ = std::move(label);
  for (std::size_t j = 1; j < precision; ++j) s.coeffs_.emplace_back(static_cast<long>(splitmix64(state) % 9 + 1));
  return s;
}

GenericSeries GenericSeries::fixture(std::string label, std::vector<Rational> coefficients, std::size_t precision) {
  if (precision < 2) throw StructuralError("fixture series: precision must be at least 2");
  if (coefficients.size() > precision - 1) throw StructuralError("fixture series: more coefficients than precision");
  GenericSeries s;
  s.label_ = std::move(label);
  s.precision_ = precision;
  s.fixture_ = true;
  s.coeffs_ = std::move(coefficients);
  s.coeffs_.resize(precision - 1, Rational(0));
  return s;
}

Rational GenericSeries::coefficient(std::size_t j) const {
  if (j == 0 || j >= precision_) return 0;
  return coeffs_[j - 1];
}

TruncatedElement::TruncatedElement(VariableSet coefficient_ring, std::size_t precision)
    : coefficient_ring_(std::move(coefficient_ring)) {
  if (precision == 0) throw StructuralError("TruncatedElement: precision must be positive");
  coeffs_.assign(precision, Polynomial::zero(coefficient_ring_));
}

TruncatedElement::TruncatedElement(std::vector<Polynomial> coefficients) {
  if (coefficients.empty()) throw StructuralError("TruncatedElement: precision must be positive");
  coefficient_ring_ = coefficients.front().vars();
  for (const auto& c : coefficients) require_same_ring(coefficient_ring_, c.vars(), "TruncatedElement");
  coeffs_ = std::move(coefficients);
}

TruncatedElement TruncatedElement::constant(const Polynomial& c, std::size_t precision) {
  TruncatedElement e(c.vars(), precision);
  e.coeffs_[0] = c;
  return e;
}

TruncatedElement TruncatedElement::from_series(const GenericSeries& s, const VariableSet& coefficient_ring) {
  TruncatedElement e(coefficient_ring, s.precision());
  for (std::size_t j = 1; j < s.precision(); ++j) e.coeffs_[j] = Polynomial::constant(coefficient_ring, s.coefficient(j));
  return e;
}

bool TruncatedElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Polynomial& c) { return c.is_zero(); });
}

TruncatedElement TruncatedElement::operator-() const {
  TruncatedElement r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

TruncatedElement operator+(const TruncatedElement& a, const TruncatedElement& b) {
  require_compatible(a, b, "add_truncated");
  TruncatedElement r(a);
  for (std::size_t j = 0; j < r.coeffs_.size(); ++j) r.coeffs_[j] += b.coeffs_[j];
  return r;
}

TruncatedElement operator-(const TruncatedElement& a, const TruncatedElement& b) { return a + (-b); }

TruncatedElement operator*(const TruncatedElement& a, const TruncatedElement& b) {
  require_compatible(a, b, "mul_truncated");
  const std::size_t n = a.precision();
  TruncatedElement r(a.coefficient_ring_, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return r;
}

TruncatedElement operator*(const Polynomial& c, const TruncatedElement& a) {
  require_same_ring(c.vars(), a.coefficient_ring_, "scale_truncated");
  TruncatedElement r(a);
  for (auto& x : r.coeffs_) x = c * x;
  return r;
}

TruncatedElement TruncatedElement::pow(unsigned e) const {
  TruncatedElement result = constant(Polynomial::constant(coefficient_ring_, 1), precision());
  for (unsigned k = 0; k < e; ++k) result = result * *this;
  return result;
}

TruncatedElement TruncatedElement::shifted(std::size_t k) const {
  TruncatedElement r(coefficient_ring_, precision());
  for (std::size_t j = 0; j + k < precision(); ++j) r.coeffs_[j + k] = coeffs_[j];
  return r;
}

TruncatedElement TruncatedElement::lifted(std::size_t k) const {
  TruncatedElement r(coefficient_ring_, precision() + k);
  for (std::size_t j = 0; j < precision(); ++j) r.coeffs_[j + k] = coeffs_[j];
  return r;
}

TruncatedElement TruncatedElement::truncated(std::size_t precision) const {
  if (precision == 0 || precision > this->precision())
    throw StructuralError("truncated: cannot raise precision or truncate to zero");
  return TruncatedElement(std::vector<Polynomial>(coeffs_.begin(), coeffs_.begin() + precision));
}

TruncatedElement mul_truncated(const TruncatedElement& a, const TruncatedElement& b) { return a * b; }

VariableSet ambient_ring(const VariableSet& coefficient_ring, std::string_view x) {
  std::vector<std::string> names{std::string(x)};
  names.insert(names.end(), coefficient_ring.names().begin(), coefficient_ring.names().end());
  return VariableSet(std::move(names));
}

Polynomial to_polynomial(const TruncatedElement& e, const VariableSet& ring, std::string_view x) {
  const std::size_t xi = ring.index_of(x);
  if (e.coefficient_ring().contains(x)) throw StructuralError("to_polynomial: coefficient ring contains x");
  Polynomial out(ring);
  for (std::size_t j = 0; j < e.precision(); ++j) {
    const Polynomial& c = e.coefficient(j);
    if (c.is_zero()) continue;
    out += embed(c, ring).times_monomial(Monomial::variable(ring.size(), xi, static_cast<Monomial::Exponent>(j)));
  }
  return out;
}

TruncatedElement truncate(const Polynomial& p, const VariableSet& coefficient_ring, std::size_t precision,
                          std::string_view x) {
  const std::size_t xi = p.vars().index_of(x);
  std::vector<Polynomial::TermMap> slots(precision);
  for (const auto& [m, c] : p.terms()) {
    if (m[xi] >= precision) continue;
    std::vector<Monomial::Exponent> e(coefficient_ring.size(), 0);
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (v == xi || m[v] == 0) continue;
      e[coefficient_ring.index_of(p.vars().name(v))] = m[v];
    }
    slots[m[xi]].emplace(Monomial(std::move(e)), c);
  }
  std::vector<Polynomial> coeffs;
  coeffs.reserve(precision);
  for (auto& s : slots) coeffs.emplace_back(coefficient_ring, std::move(s));
  if (coeffs.empty()) throw StructuralError("truncate: precision must be positive");
  return TruncatedElement(std::move(coeffs));
}

TruncatedElement shifted_power(const VariableSet& coefficient_ring, std::string_view var, const GenericSeries& s,
                               unsigned h) {
  if (h < 1) throw StructuralError("shifted_power: exponent must be positive");
  const TruncatedElement base =
      TruncatedElement::constant(Polynomial::variable(coefficient_ring, var), s.precision()) -
      TruncatedElement::from_series(s, coefficient_ring);
  return base.pow(h);
}

TruncatedElement square_shifted(const VariableSet& coefficient_ring, std::string_view var, const GenericSeries& s,
                                unsigned h) {
  if (h < 2) throw StructuralError("square_shifted: exponent must be at least 2");
  return shifted_power(coefficient_ring, var, s, h);
}

EndpieceDecomposition endpiece(const TruncatedElement& e, std::size_t r, std::string_view x) {
  const std::size_t n = e.precision();
  if (r < 1 || r >= n)
    throw StructuralError("endpiece: level r=" + std::to_string(r) + " outside 1.." + std::to_string(n - 1));
  const VariableSet ring = ambient_ring(e.coefficient_ring(), x);
  EndpieceDecomposition d{r, TruncatedElement(e.coefficient_ring(), n - r), Polynomial(ring),
                          e.coefficient(0), {}, ring};
  d.b.assign(e.coefficients().begin() + 1, e.coefficients().end());
  std::vector<Polynomial> tail(e.coefficients().begin() + static_cast<std::ptrdiff_t>(r), e.coefficients().end());
  d.endpiece = TruncatedElement(std::move(tail));
  const std::size_t xi = ring.index_of(x);
  for (std::size_t j = 1; j < r; ++j) {
    d.u += embed(d.b[j - 1], ring).times_monomial(
        Monomial::variable(ring.size(), xi, static_cast<Monomial::Exponent>(j - 1)));
  }
  return d;
}

TruncatedElement reassemble(const EndpieceDecomposition& d, std::string_view x) {
  const std::size_t n = d.endpiece.precision() + d.r;
  const VariableSet& coeff_ring = d.endpiece.coefficient_ring();
  const Polynomial u_times_x = d.u * Polynomial::variable(d.ring, x);
  return d.endpiece.lifted(d.r) + truncate(u_times_x, coeff_ring, n, x) + TruncatedElement::constant(d.leading, n);
}

nlohmann::json to_json(const GenericSeries& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : s.coefficients()) coeffs.push_back(format_rational(c));
  nlohmann::json j{{"label", s.label()}, {"seed", s.seed()}, {"N", s.precision()}, {"coeffs", std::move(coeffs)}};
  if (s.is_fixture()) j["fixture"] = true;
  return j;
}

GenericSeries generic_series_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("label") || !j.contains("N") || !j.contains("coeffs") ||
      !j["label"].is_string() || !j["N"].is_number_unsigned() || !j["coeffs"].is_array())
    throw ParseError("series JSON: expected label, N and coeffs");
  const auto n = j["N"].get<std::size_t>();
  std::vector<Rational> coeffs;
  for (const auto& c : j["coeffs"]) {
    if (!c.is_string()) throw ParseError("series JSON: coefficients must be strings");
    coeffs.push_back(parse_rational(c.get<std::string>()));
  }
  const std::string label = j["label"].get<std::string>();
  if (j.value("fixture", false)) return GenericSeries::fixture(label, std::move(coeffs), n);
  if (!j.contains("seed") || !j["seed"].is_number_unsigned()) throw ParseError("series JSON: missing seed");
  if (std::any_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; }))
    throw ParseError("series JSON: generic series have nonzero coefficients");
  GenericSeries s = GenericSeries::make_generic(j["seed"].get<std::uint64_t>(), label, n);
  if (s.coefficients() != coeffs) {
    // Stored coefficients that differ from the seeded stream are kept as given.
    return GenericSeries::fixture(label, std::move(coeffs), n);
  }
  return s;
}

nlohmann::json to_json(const TruncatedElement& e) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : e.coefficients()) arr.push_back(to_json(c));
  return arr;
}

TruncatedElement truncated_element_from_json(const nlohmann::json& j, const VariableSet& coefficient_ring) {
  if (!j.is_array() || j.empty()) throw ParseError("truncated element JSON: expected a nonempty list");
  std::vector<Polynomial> coeffs;
  for (const auto& c : j) coeffs.push_back(polynomial_from_json(c, coefficient_ring));
  return TruncatedElement(std::move(coeffs));
}

}  // namespace ringcert::series
