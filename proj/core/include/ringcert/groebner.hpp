#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ringcert/monomial_order.hpp"
#include "ringcert/polynomial.hpp"

namespace ringcert {

struct GroebnerStats {
  std::size_t pairs_created = 0;
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
  std::size_t basis_size = 0;
};

/// Reduced Groebner basis of the ideal generated by `generators` (which must
/// share one variable set). The result is monic, inter-reduced and sorted by
/// increasing leading monomial, so it is a canonical form of the ideal for
/// the given order. The unit ideal yields {1}; the zero ideal yields {}.
///
/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// first, ties broken by pair index) and the Gebauer-Moeller installation of
/// the product and chain criteria. Arithmetic is fraction-free over Z
/// internally. Every result is audited against Buchberger's S-polynomial
/// criterion before it is returned; a failed audit throws std::logic_error.
std::vector<Polynomial> reduced_groebner_basis(std::span<const Polynomial> generators, const MonomialOrder& order,
                                               GroebnerStats* stats = nullptr);

const Monomial& leading_monomial(const Polynomial& p, const MonomialOrder& order);
Rational leading_coefficient(const Polynomial& p, const MonomialOrder& order);

/// S-polynomial lcm/lt(f)*f - lcm/lt(g)*g, with leading coefficients
/// normalised to 1.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order);

/// Remainder of full multivariate division of `p` by `divisors` (first
/// divisor whose leading monomial divides the current term wins). When the
/// divisors form a Groebner basis this is the normal form.
Polynomial reduce_modulo(const Polynomial& p, std::span<const Polynomial> divisors, const MonomialOrder& order);

/// True iff every S-polynomial of `basis` reduces to zero modulo `basis`.
/// Pairs with coprime leading monomials are still checked.
bool satisfies_buchberger_criterion(std::span<const Polynomial> basis, const MonomialOrder& order);

}  // namespace ringcert
