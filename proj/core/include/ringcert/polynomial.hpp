#pragma once

#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ringcert/monomial.hpp"
#include "ringcert/rational.hpp"
#include "ringcert/variables.hpp"

namespace ringcert {

/// Sparse multivariate polynomial over Q. Terms are kept in grevlex
/// descending order and never carry a zero coefficient, so two polynomials
/// are equal exactly when their term maps are.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GrevlexDescending>;

  explicit Polynomial(VariableSet vars);
  Polynomial(VariableSet vars, TermMap terms);

  static Polynomial zero(const VariableSet& vars) { return Polynomial(vars); }
  static Polynomial constant(const VariableSet& vars, const Rational& c);
  static Polynomial variable(const VariableSet& vars, std::string_view name, Monomial::Exponent power = 1);
  static Polynomial monomial(const VariableSet& vars, Monomial m, const Rational& c = 1);

  const VariableSet& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the monomial 1.
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  /// Total degree; -1 for the zero polynomial.
  long degree() const;
  /// Highest power of variable `v` that appears; -1 for zero.
  long degree_in(std::size_t v) const;
  bool involves(std::size_t v) const { return degree_in(v) > 0; }

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator-(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(const Rational& c, const Polynomial& p);
  Polynomial& operator+=(const Polynomial& q) { return *this = *this + q; }
  Polynomial& operator-=(const Polynomial& q) { return *this = *this - q; }
  Polynomial& operator*=(const Polynomial& q) { return *this = *this * q; }

  Polynomial pow(unsigned e) const;
  Polynomial times_monomial(const Monomial& m, const Rational& c = 1) const;

  friend bool operator==(const Polynomial& p, const Polynomial& q) {
    return p.vars_ == q.vars_ && p.terms_ == q.terms_;
  }

  /// Human-readable form, terms in grevlex-descending order, e.g.
  /// "y^2 - 2*x*y + x^2".
  std::string to_string() const;

 private:
  void prune();

  VariableSet vars_;
  TermMap terms_;
};

inline Polynomial add(const Polynomial& p, const Polynomial& q) { return p + q; }
inline Polynomial mul(const Polynomial& p, const Polynomial& q) { return p * q; }

/// Formal partial derivative with respect to the named variable.
Polynomial partial_derivative(const Polynomial& p, std::string_view var);

/// Simultaneous substitution. Every binding target must share one variable
/// set, which becomes the ring of the result; variables of `p` that are not
/// bound are carried over by name and must exist in that ring. With no
/// bindings, `p` is returned unchanged.
Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings);

/// Moves `p` into `target` by variable name; every variable that occurs in
/// `p` must exist in `target`.
Polynomial embed(const Polynomial& p, const VariableSet& target);

/// Exact quotient p / d. Throws PreconditionError if d does not divide p.
Polynomial divide_exact(const Polynomial& p, const Polynomial& d);

/// Parses an expression such as "x^2*F + y^2 - 3/2*x*y" over `vars`.
/// Supports + - * ^, parentheses, integer and a/b rational literals.
Polynomial parse_polynomial(std::string_view text, const VariableSet& vars);

/// {"vars": [...], "terms": [{"e": [...], "c": "num/den"}, ...]} with terms
/// in canonical order.
nlohmann::json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j);
/// Reads terms against an already-known ring; "vars" must match if present.
Polynomial polynomial_from_json(const nlohmann::json& j, const VariableSet& vars);

}  // namespace ringcert
