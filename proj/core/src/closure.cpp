#include "ringcert/closure.hpp"

#include "ringcert/errors.hpp"

namespace ringcert::closure {
namespace {

// Drops generators that vanish modulo Q and replaces the rest by their
// normal forms; the ideal plus Q is unchanged.
Ideal reduce_generators(const Ideal& a, const std::optional<Ideal>& modulus) {
  if (!modulus) return a;
  std::vector<Polynomial> gens;
  for (const auto& g : a.generators()) {
    Polynomial r = modulus->normal_form(g);
    if (!r.is_zero()) gens.push_back(std::move(r));
  }
  return Ideal(a.vars(), std::move(gens), a.order());
}

Ideal with_modulus(const Ideal& a, const std::optional<Ideal>& modulus) {
  return modulus ? ideal_sum(reduce_generators(a, modulus), *modulus) : a;
}

Ideal product_mod(const Ideal& a, const Ideal& b, const std::optional<Ideal>& modulus) {
  return reduce_generators(ideal_product(a, b), modulus);
}

std::optional<ReductionWitness> search(const Ideal& i, const Ideal& j, unsigned max_exponent,
                                       const std::optional<Ideal>& modulus) {
  const Ideal ired = reduce_generators(i, modulus);
  const Ideal jred = reduce_generators(j, modulus);
  // J^{n-1}, maintained incrementally.
  Ideal j_prev = Ideal::unit(j.vars(), j.order());
  for (unsigned n = 1; n <= max_exponent; ++n) {
    const Ideal lhs = with_modulus(product_mod(ired, j_prev, modulus), modulus);
    const Ideal j_n = product_mod(j_prev, jred, modulus);
    const Ideal rhs = with_modulus(j_n, modulus);
    if (ideal_equal(lhs, rhs)) return ReductionWitness{n, i, j, lhs.groebner_basis(), rhs.groebner_basis(), modulus};
    // Carry J^n forward as its Groebner basis, which keeps later products small.
    std::vector<Polynomial> jn_basis;
    for (const auto& g : modulus ? rhs.groebner_basis() : j_n.groebner_basis()) jn_basis.push_back(g);
    j_prev = Ideal(j.vars(), std::move(jn_basis), j.order());
  }
  return std::nullopt;
}

void check_modulus(const Ideal& a, const std::optional<Ideal>& modulus) {
  if (!modulus) return;
  require_same_ring(a.vars(), modulus->vars(), "closure modulus");
  if (!(a.order() == modulus->order())) throw StructuralError("closure: modulus uses a different term order");
}

}  // namespace

Ideal ideal_product(const Ideal& a, const Ideal& b) {
  require_same_ring(a.vars(), b.vars(), "ideal_product");
  if (!(a.order() == b.order())) throw StructuralError("ideal_product: ideals use different term orders");
  std::vector<Polynomial> gens;
  gens.reserve(a.generators().size() * b.generators().size());
  for (const auto& f : a.generators())
    for (const auto& g : b.generators()) gens.push_back(f * g);
  return Ideal(a.vars(), std::move(gens), a.order());
}

Ideal ideal_power(const Ideal& a, unsigned e) {
  Ideal result = Ideal::unit(a.vars(), a.order());
  for (unsigned k = 0; k < e; ++k) result = ideal_product(result, a);
  return result;
}

std::optional<ReductionWitness> is_integral_over(const Polynomial& r, const Ideal& ideal, unsigned max_exponent,
                                                 const std::optional<Ideal>& modulus) {
  require_same_ring(ideal.vars(), r.vars(), "is_integral_over");
  check_modulus(ideal, modulus);
  if (max_exponent < 1) throw PreconditionError("is_integral_over: max_exponent must be at least 1");
  std::vector<Polynomial> jgens(ideal.generators());
  jgens.push_back(r);
  return search(ideal, Ideal(ideal.vars(), std::move(jgens), ideal.order()), max_exponent, modulus);
}

std::optional<ReductionWitness> is_reduction(const Ideal& i, const Ideal& j, unsigned max_exponent,
                                             const std::optional<Ideal>& modulus) {
  require_same_ring(i.vars(), j.vars(), "is_reduction");
  if (!(i.order() == j.order())) throw StructuralError("is_reduction: ideals use different term orders");
  check_modulus(i, modulus);
  if (max_exponent < 1) throw PreconditionError("is_reduction: max_exponent must be at least 1");
  const Ideal j_mod = with_modulus(j, modulus);
  for (const auto& g : i.generators())
    if (!j_mod.contains(g)) throw PreconditionError("is_reduction: I is not contained in J");
  return search(i, j, max_exponent, modulus);
}

bool reverify(const ReductionWitness& w) {
  const Ideal& i = w.reduction;
  const Ideal& j = w.j;
  Ideal lhs = ideal_product(i, ideal_power(j, w.n - 1));
  Ideal rhs = ideal_power(j, w.n);
  if (w.modulus) {
    lhs = ideal_sum(lhs, *w.modulus);
    rhs = ideal_sum(rhs, *w.modulus);
  }
  return ideal_equal(lhs, rhs) && lhs.groebner_basis() == w.lhs_basis && rhs.groebner_basis() == w.rhs_basis;
}

nlohmann::json to_json(const ReductionWitness& w) {
  nlohmann::json j{{"n", w.n},
                   {"I", to_json(w.reduction.generators())},
                   {"J", to_json(w.j.generators())},
                   {"lhs_basis", to_json(w.lhs_basis)},
                   {"rhs_basis", to_json(w.rhs_basis)}};
  if (w.modulus) j["modulus"] = to_json(w.modulus->generators());
  return j;
}

}  // namespace ringcert::closure
