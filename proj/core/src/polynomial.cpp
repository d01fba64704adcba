#include "ringcert/polynomial.hpp"

#include <cctype>

#include "ringcert/errors.hpp"

namespace ringcert {

Polynomial::Polynomial(VariableSet vars) : vars_(std::move(vars)) {}

Polynomial::Polynomial(VariableSet vars, TermMap terms) : vars_(std::move(vars)), terms_(std::move(terms)) {
  for (const auto& [m, c] : terms_)
    if (m.size() != vars_.size()) throw StructuralError("monomial length does not match variable set");
  prune();
}

Polynomial Polynomial::constant(const VariableSet& vars, const Rational& c) {
  return monomial(vars, Monomial(vars.size()), c);
}

Polynomial Polynomial::variable(const VariableSet& vars, std::string_view name, Monomial::Exponent power) {
  return monomial(vars, Monomial::variable(vars.size(), vars.index_of(name), power));
}

Polynomial Polynomial::monomial(const VariableSet& vars, Monomial m, const Rational& c) {
  Polynomial p(vars);
  if (m.size() != vars.size()) throw StructuralError("monomial length does not match variable set");
  if (c != 0) p.terms_.emplace(std::move(m), c);
  return p;
}

void Polynomial::prune() { std::erase_if(terms_, [](const auto& t) { return t.second == 0; }); }

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_term() const { return coefficient(Monomial(vars_.size())); }

Rational Polynomial::coefficient(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

long Polynomial::degree() const {
  // grevlex is degree-compatible, so the first term has maximal degree.
  return terms_.empty() ? -1 : static_cast<long>(terms_.begin()->first.degree());
}

long Polynomial::degree_in(std::size_t v) const {
  if (terms_.empty()) return -1;
  long d = 0;
  for (const auto& [m, c] : terms_) d = std::max<long>(d, m[v]);
  return d;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
  require_same_ring(p.vars_, q.vars_, "add");
  Polynomial r(p);
  for (const auto& [m, c] : q.terms_) {
    auto [it, inserted] = r.terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) r.terms_.erase(it);
    }
  }
  return r;
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-q); }

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  require_same_ring(p.vars_, q.vars_, "mul");
  Polynomial r(p.vars_);
  for (const auto& [mp, cp] : p.terms_) {
    for (const auto& [mq, cq] : q.terms_) {
      auto [it, inserted] = r.terms_.try_emplace(mp * mq, cp * cq);
      if (!inserted) it->second += cp * cq;
    }
  }
  r.prune();
  return r;
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
  if (c == 0) return Polynomial(p.vars_);
  Polynomial r(p);
  for (auto& [m, coeff] : r.terms_) coeff *= c;
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(vars_, 1);
  Polynomial base(*this);
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Rational& c) const {
  Polynomial r(vars_);
  if (c == 0) return r;
  for (const auto& [mp, cp] : terms_) r.terms_.emplace_hint(r.terms_.end(), mp * m, cp * c);
  return r;
}

namespace {

void append_monomial(std::string& out, const Monomial& m, const VariableSet& vars) {
  bool first = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!first) out += '*';
    first = false;
    out += vars.name(i);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const Rational mag = abs(c);
    if (m.is_one()) {
      out += format_rational(mag);
    } else {
      if (mag != 1) out += format_rational(mag) + "*";
      append_monomial(out, m, vars_);
    }
  }
  return out;
}

Polynomial partial_derivative(const Polynomial& p, std::string_view var) {
  const std::size_t v = p.vars().index_of(var);
  Polynomial::TermMap out;
  for (const auto& [m, c] : p.terms()) {
    if (m[v] == 0) continue;
    out.emplace(m.with(v, m[v] - 1), c * m[v]);
  }
  return Polynomial(p.vars(), std::move(out));
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings) {
  if (bindings.empty()) return p;
  const VariableSet& target = bindings.begin()->second.vars();
  for (const auto& [name, value] : bindings) {
    require_same_ring(target, value.vars(), "substitute");
    p.vars().index_of(name);
  }

  // Image of each source variable in the target ring, with a power cache.
  const std::size_t n = p.vars().size();
  std::vector<Polynomial> image;
  image.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& name = p.vars().name(i);
    if (auto it = bindings.find(name); it != bindings.end()) {
      image.push_back(it->second);
    } else if (target.contains(name)) {
      image.push_back(Polynomial::variable(target, name));
    } else {
      // Only an error if the variable actually occurs.
      image.push_back(Polynomial::zero(target));
      if (p.involves(i))
        throw StructuralError("substitute: variable '" + name + "' is unbound and absent from the target ring");
    }
  }
  std::vector<std::vector<Polynomial>> powers(n);
  auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * image[i]);
    return cache[e];
  };

  Polynomial result(target);
  for (const auto& [m, c] : p.terms()) {
    Polynomial term = Polynomial::constant(target, c);
    for (std::size_t i = 0; i < n && !term.is_zero(); ++i)
      if (m[i] > 0) term = term * power(i, m[i]);
    result += term;
  }
  return result;
}

Polynomial embed(const Polynomial& p, const VariableSet& target) {
  if (p.vars() == target) return p;
  std::vector<std::optional<std::size_t>> where(p.vars().size());
  for (std::size_t i = 0; i < where.size(); ++i) where[i] = target.find(p.vars().name(i));
  Polynomial::TermMap out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Monomial::Exponent> e(target.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!where[i])
        throw StructuralError("embed: variable '" + p.vars().name(i) + "' is absent from the target ring");
      e[*where[i]] = m[i];
    }
    out.emplace(Monomial(std::move(e)), c);
  }
  return Polynomial(target, std::move(out));
}

Polynomial divide_exact(const Polynomial& p, const Polynomial& d) {
  require_same_ring(p.vars(), d.vars(), "divide_exact");
  if (d.is_zero()) throw PreconditionError("divide_exact: division by zero");
  const auto& [lm, lc] = *d.terms().begin();
  Polynomial quotient(p.vars());
  Polynomial rem(p);
  while (!rem.is_zero()) {
    const auto& [m, c] = *rem.terms().begin();
    if (!lm.divides(m)) throw PreconditionError("divide_exact: divisor does not divide dividend");
    const Monomial q = m.quotient(lm);
    const Rational k = c / lc;
    quotient += Polynomial::monomial(p.vars(), q, k);
    rem -= d.times_monomial(q, k);
  }
  return quotient;
}

namespace {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const VariableSet& vars) : text_(text), vars_(vars) {}

  Polynomial parse() {
    Polynomial p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + why + " in '" +
                     std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static bool ident_char(char c, bool first) {
    const auto u = static_cast<unsigned char>(c);
    return u >= 0x80 || std::isalpha(u) || c == '_' || (!first && std::isdigit(u));
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  Polynomial expression() {
    Polynomial p = term();
    for (;;) {
      if (accept('+')) {
        p += term();
      } else if (accept('-')) {
        p -= term();
      } else {
        return p;
      }
    }
  }

  Polynomial term() {
    Polynomial p = unary();
    while (accept('*')) p *= unary();
    return p;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_space();
      const std::string e = digits();
      if (e.size() > 6) fail("exponent too large");
      return base.pow(static_cast<unsigned>(std::stoul(e)));
    }
    return base;
  }

  Polynomial atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (accept('(')) {
      Polynomial p = expression();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string lit = digits();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        lit += "/" + digits();
      }
      return Polynomial::constant(vars_, parse_rational(lit));
    }
    if (ident_char(c, true)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_], false)) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      if (!vars_.contains(name)) fail("unknown variable '" + std::string(name) + "'");
      return Polynomial::variable(vars_, name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  const VariableSet& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const VariableSet& vars) {
  return ExpressionParser(text, vars).parse();
}

nlohmann::json to_json(const Polynomial& p) {
  nlohmann::json vars = nlohmann::json::array();
  for (const auto& n : p.vars().names()) vars.push_back(n);
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    nlohmann::json e = nlohmann::json::array();
    for (auto x : m.exponents()) e.push_back(x);
    terms.push_back({{"e", std::move(e)}, {"c", format_rational(c)}});
  }
  return {{"vars", std::move(vars)}, {"terms", std::move(terms)}};
}

namespace {

VariableSet vars_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vars") || !j["vars"].is_array())
    throw ParseError("polynomial JSON: missing \"vars\" array");
  std::vector<std::string> names;
  for (const auto& v : j["vars"]) {
    if (!v.is_string()) throw ParseError("polynomial JSON: variable names must be strings");
    names.push_back(v.get<std::string>());
  }
  try {
    return VariableSet(std::move(names));
  } catch (const StructuralError& e) {
    throw ParseError(std::string("polynomial JSON: ") + e.what());
  }
}

}  // namespace

Polynomial polynomial_from_json(const nlohmann::json& j) { return polynomial_from_json(j, vars_from_json(j)); }

Polynomial polynomial_from_json(const nlohmann::json& j, const VariableSet& vars) {
  if (!j.is_object()) throw ParseError("polynomial JSON: expected an object");
  if (j.contains("vars") && !(vars_from_json(j) == vars))
    throw ParseError("polynomial JSON: variable list does not match the expected ring");
  if (!j.contains("terms") || !j["terms"].is_array()) throw ParseError("polynomial JSON: missing \"terms\" array");
  Polynomial::TermMap terms;
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("e") || !t.contains("c") || !t["e"].is_array() || !t["c"].is_string())
      throw ParseError("polynomial JSON: malformed term");
    if (t["e"].size() != vars.size()) throw ParseError("polynomial JSON: exponent vector has wrong length");
    std::vector<Monomial::Exponent> e;
    for (const auto& x : t["e"]) {
      if (!x.is_number_unsigned()) throw ParseError("polynomial JSON: exponents must be non-negative integers");
      e.push_back(x.get<Monomial::Exponent>());
    }
    const auto text = t["c"].get<std::string>();
    Rational c = parse_rational(text);
    if (c == 0) throw ParseError("polynomial JSON: zero coefficient");
    if (format_rational(c) != text) throw ParseError("polynomial JSON: coefficient '" + text + "' is not in lowest terms");
    auto [it, inserted] = terms.try_emplace(Monomial(std::move(e)), std::move(c));
    if (!inserted) throw ParseError("polynomial JSON: repeated monomial");
  }
  return Polynomial(vars, std::move(terms));
}

}  // namespace ringcert
