#pragma once

#include <optional>
#include <vector>

#include "ringcert/ideal.hpp"

// Integral dependence on an ideal, via the reduction criterion: r is
// integral over I iff I*J^{n-1} = J^n for J = I + (r) and some n >= 1.
namespace ringcert::closure {

inline constexpr unsigned kDefaultMaxExponent = 10;

/// Certifies I*J^{n-1} = J^n. Both bases are reduced Groebner bases of the
/// two sides (taken modulo `modulus` when one was given).
struct ReductionWitness {
  unsigned n = 0;
  Ideal reduction;
  Ideal j;
  std::vector<Polynomial> lhs_basis;
  std::vector<Polynomial> rhs_basis;
  /// Ideal the comparison was made modulo; absent for plain Q[vars].
  std::optional<Ideal> modulus;
};

Ideal ideal_product(const Ideal& a, const Ideal& b);
/// a^e; a^0 is the unit ideal.
Ideal ideal_power(const Ideal& a, unsigned e);

/// Least n <= max_exponent with I*J^{n-1} = J^n for J = I + (r), or nothing.
/// Nothing means "not integral as far as n = max_exponent", not a proof of
/// non-integrality.
///
/// With a modulus Q both sides are compared in Q[vars]/Q, i.e. as
/// I*J^{n-1} + Q = J^n + Q. Truncated x-adic data live in Q[x, ...]/(x^N),
/// so the natural modulus there is (x^N). Generators are reduced modulo Q
/// before products are formed.
std::optional<ReductionWitness> is_integral_over(const Polynomial& r, const Ideal& ideal,
                                                 unsigned max_exponent = kDefaultMaxExponent,
                                                 const std::optional<Ideal>& modulus = std::nullopt);

/// Least n <= max_exponent with I*J^{n-1} = J^n. Throws PreconditionError
/// unless every generator of I lies in J (+ modulus).
std::optional<ReductionWitness> is_reduction(const Ideal& i, const Ideal& j,
                                             unsigned max_exponent = kDefaultMaxExponent,
                                             const std::optional<Ideal>& modulus = std::nullopt);

/// Recomputes both sides from scratch and compares them.
bool reverify(const ReductionWitness& w);

/// {"n", "J": [...], "lhs_basis": [...], "rhs_basis": [...], "modulus"?}
nlohmann::json to_json(const ReductionWitness& w);

}  // namespace ringcert::closure
