#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ringcert/groebner.hpp"
#include "ringcert/monomial_order.hpp"
#include "ringcert/polynomial.hpp"

namespace ringcert {

/// Finitely generated ideal of Q[vars] together with the term order used to
/// compute its canonical form. The reduced Groebner basis is computed on
/// first use and cached; copies of an Ideal share the cache, and filling it
/// is safe from concurrent callers.
class Ideal {
 public:
  Ideal(VariableSet vars, std::vector<Polynomial> generators, MonomialOrder order = MonomialOrder::grevlex());
  /// Ring taken from the first generator; `generators` must be nonempty.
  explicit Ideal(std::vector<Polynomial> generators, MonomialOrder order = MonomialOrder::grevlex());

  static Ideal zero(const VariableSet& vars, MonomialOrder order = MonomialOrder::grevlex());
  static Ideal unit(const VariableSet& vars, MonomialOrder order = MonomialOrder::grevlex());
  /// (v_1, ..., v_k) for the named variables.
  static Ideal coordinate(const VariableSet& vars, std::span<const std::string> names,
                          MonomialOrder order = MonomialOrder::grevlex());

  const VariableSet& vars() const { return vars_; }
  const MonomialOrder& order() const { return order_; }
  /// Nonzero generators, in the order given.
  const std::vector<Polynomial>& generators() const { return generators_; }

  const std::vector<Polynomial>& groebner_basis() const;
  Polynomial normal_form(const Polynomial& p) const;
  bool contains(const Polynomial& p) const { return normal_form(p).is_zero(); }
  bool contains(const Ideal& other) const;
  bool is_unit() const;
  bool is_zero() const { return generators_.empty(); }

  /// The same ideal with a different term order (fresh cache).
  Ideal with_order(MonomialOrder order) const { return Ideal(vars_, generators_, std::move(order)); }

 private:
  struct Cache;

  VariableSet vars_;
  std::vector<Polynomial> generators_;
  MonomialOrder order_;
  std::shared_ptr<Cache> cache_;
};

std::vector<Polynomial> groebner_basis(const Ideal& ideal);
Polynomial normal_form(const Polynomial& p, const Ideal& ideal);

/// True iff both ideals have identical reduced Groebner bases. Throws
/// StructuralError unless they share ring and order.
bool ideal_equal(const Ideal& a, const Ideal& b);

Ideal ideal_sum(const Ideal& a, const Ideal& b);
/// a ∩ b, by eliminating t from t*a + (1-t)*b. The elimination order is a
/// grevlex block for t followed by a's own order.
Ideal intersect(const Ideal& a, const Ideal& b);
/// (I : h) = {p : p*h in I}. Throws StructuralError for h = 0.
Ideal colon(const Ideal& ideal, const Polynomial& h);
/// (I : h^inf), by eliminating w from I + (w*h - 1) under a w block followed
/// by I's own order. Throws StructuralError for h = 0.
Ideal saturate(const Ideal& ideal, const Polynomial& h);
/// I ∩ Q[keep], computed with a grevlex block on the discarded variables
/// followed by I's base order restricted to the kept ones (grevlex if I's
/// order has elimination blocks). The result lives in the original ring and
/// order.
Ideal eliminate(const Ideal& ideal, std::span<const std::string> keep);

/// Krull dimension of Q[vars]/I: the largest set of variables containing the
/// support of no leading monomial of the Groebner basis. Returns -1 for the
/// unit ideal.
int krull_dimension(const Ideal& ideal);

struct LocalMembership {
  bool member = false;
  /// Reduced Groebner basis of (I : p); p is a member of I localized at m
  /// iff some element of it lies outside m.
  std::vector<Polynomial> colon_basis;
};

/// Membership of p in I * Q[vars]_m for a maximal ideal m generated by
/// variables. Decided via (I : p) not contained in m. The zero polynomial is
/// always a member. Throws StructuralError unless every generator of m is a
/// nonzero multiple of a single variable.
LocalMembership local_membership_certificate(const Polynomial& p, const Ideal& ideal, const Ideal& maximal);
bool local_membership(const Polynomial& p, const Ideal& ideal, const Ideal& maximal);

/// {"order": tag, "vars": [...], "generators": [polynomial JSON, ...]}
nlohmann::json to_json(const Ideal& ideal);
/// Also accepts generators written as text ("x*y - 1") when "vars" is given.
Ideal ideal_from_json(const nlohmann::json& j);
nlohmann::json to_json(std::span<const Polynomial> polys);

}  // namespace ringcert
