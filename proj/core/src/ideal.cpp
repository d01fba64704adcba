#include "ringcert/ideal.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <set>

#include "ringcert/errors.hpp"

namespace ringcert {

struct Ideal::Cache {
  std::once_flag once;
  std::vector<Polynomial> basis;
};

Ideal::Ideal(VariableSet vars, std::vector<Polynomial> generators, MonomialOrder order)
    : vars_(std::move(vars)), order_(std::move(order)), cache_(std::make_shared<Cache>()) {
  if (!order_.fits(vars_.size())) throw StructuralError("Ideal: order " + order_.tag() + " does not fit the ring");
  for (auto& g : generators) {
    require_same_ring(vars_, g.vars(), "Ideal");
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
}

Ideal::Ideal(std::vector<Polynomial> generators, MonomialOrder order)
    : order_(std::move(order)), cache_(std::make_shared<Cache>()) {
  if (generators.empty()) throw StructuralError("Ideal: empty generator list without a ring");
  vars_ = generators.front().vars();
  if (!order_.fits(vars_.size())) throw StructuralError("Ideal: order " + order_.tag() + " does not fit the ring");
  for (auto& g : generators) {
    require_same_ring(vars_, g.vars(), "Ideal");
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
}

Ideal Ideal::zero(const VariableSet& vars, MonomialOrder order) { return Ideal(vars, {}, std::move(order)); }

Ideal Ideal::unit(const VariableSet& vars, MonomialOrder order) {
  return Ideal(vars, {Polynomial::constant(vars, 1)}, std::move(order));
}

Ideal Ideal::coordinate(const VariableSet& vars, std::span<const std::string> names, MonomialOrder order) {
  std::vector<Polynomial> gens;
  for (const auto& n : names) gens.push_back(Polynomial::variable(vars, n));
  return Ideal(vars, std::move(gens), std::move(order));
}

const std::vector<Polynomial>& Ideal::groebner_basis() const {
  std::call_once(cache_->once, [this] { cache_->basis = reduced_groebner_basis(generators_, order_); });
  return cache_->basis;
}

Polynomial Ideal::normal_form(const Polynomial& p) const {
  require_same_ring(vars_, p.vars(), "normal_form");
  return reduce_modulo(p, groebner_basis(), order_);
}

bool Ideal::contains(const Ideal& other) const {
  require_same_ring(vars_, other.vars_, "contains");
  return std::all_of(other.generators_.begin(), other.generators_.end(),
                     [&](const Polynomial& g) { return contains(g); });
}

bool Ideal::is_unit() const {
  const auto& gb = groebner_basis();
  return gb.size() == 1 && gb.front().is_constant();
}

std::vector<Polynomial> groebner_basis(const Ideal& ideal) { return ideal.groebner_basis(); }

Polynomial normal_form(const Polynomial& p, const Ideal& ideal) { return ideal.normal_form(p); }

namespace {

void require_compatible(const Ideal& a, const Ideal& b, std::string_view op) {
  require_same_ring(a.vars(), b.vars(), op);
  if (!(a.order() == b.order())) throw StructuralError(std::string(op) + ": ideals use different term orders");
}

std::vector<Polynomial> embed_all(std::span<const Polynomial> polys, const VariableSet& target) {
  std::vector<Polynomial> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(embed(p, target));
  return out;
}

}  // namespace

bool ideal_equal(const Ideal& a, const Ideal& b) {
  require_compatible(a, b, "ideal_equal");
  return a.groebner_basis() == b.groebner_basis();
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  require_compatible(a, b, "ideal_sum");
  std::vector<Polynomial> gens(a.generators());
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Ideal(a.vars(), std::move(gens), a.order());
}

namespace {

// I ∩ Q[kept] for the ideal of `gens`, computed with the discarded variables
// in a leading grevlex block and `rest` on the kept ones. Survivors are
// returned in `target`, whose variables must include the kept ones.
std::vector<Polynomial> eliminate_with(std::span<const Polynomial> gens, const VariableSet& vars,
                                       const std::set<std::string_view>& kept, const MonomialOrder& rest,
                                       const VariableSet& target) {
  std::vector<std::string> permuted;
  for (const auto& n : vars.names())
    if (!kept.contains(n)) permuted.push_back(n);
  const std::size_t block = permuted.size();
  for (const auto& n : vars.names())
    if (kept.contains(n)) permuted.push_back(n);
  const VariableSet elim_ring(std::move(permuted));

  const auto basis = reduced_groebner_basis(embed_all(gens, elim_ring), MonomialOrder::elimination(block, rest));
  std::vector<Polynomial> survivors;
  for (const auto& g : basis) {
    bool free = true;
    for (std::size_t v = 0; v < block && free; ++v) free = !g.involves(v);
    if (free) survivors.push_back(embed(g, target));
  }
  return survivors;
}

// Eliminates the trailing `fresh` variables of `ring` = vars + fresh; the
// kept block is ordered exactly like `order` orders vars.
Ideal eliminate_fresh(std::span<const Polynomial> gens, const VariableSet& ring, const VariableSet& vars,
                      const MonomialOrder& order) {
  const std::set<std::string_view> kept(vars.names().begin(), vars.names().end());
  return Ideal(vars, eliminate_with(gens, ring, kept, order, vars), order);
}

}  // namespace

Ideal eliminate(const Ideal& ideal, std::span<const std::string> keep) {
  const VariableSet& vars = ideal.vars();
  std::set<std::string_view> kept;
  for (const auto& k : keep) kept.insert(vars.name(vars.index_of(k)));
  if (kept.size() == vars.size()) return ideal;
  // The kept variables inherit the base order; elimination blocks of the
  // ideal's own order do not survive the permutation, so those fall back to
  // grevlex.
  std::vector<std::size_t> kept_idx;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (kept.contains(vars.name(i))) kept_idx.push_back(i);
  const MonomialOrder rest =
      ideal.order().blocks().empty() ? ideal.order().base_restricted(kept_idx) : MonomialOrder::grevlex();
  return Ideal(vars, eliminate_with(ideal.generators(), vars, kept, rest, vars), ideal.order());
}

Ideal intersect(const Ideal& a, const Ideal& b) {
  require_compatible(a, b, "intersect");
  const VariableSet& vars = a.vars();
  const std::string t_name = vars.fresh_name("t");
  const VariableSet ring = vars.extended({t_name});
  const Polynomial t = Polynomial::variable(ring, t_name);
  const Polynomial one_minus_t = Polynomial::constant(ring, 1) - t;
  std::vector<Polynomial> gens;
  for (const auto& g : a.generators()) gens.push_back(t * embed(g, ring));
  for (const auto& g : b.generators()) gens.push_back(one_minus_t * embed(g, ring));
  return eliminate_fresh(gens, ring, vars, a.order());
}

Ideal colon(const Ideal& ideal, const Polynomial& h) {
  require_same_ring(ideal.vars(), h.vars(), "colon");
  if (h.is_zero()) throw StructuralError("colon: the divisor must be nonzero");
  if (h.is_constant()) return ideal;
  const Ideal principal(ideal.vars(), {h}, ideal.order());
  const Ideal meet = intersect(ideal, principal);
  std::vector<Polynomial> gens;
  for (const auto& g : meet.groebner_basis()) gens.push_back(divide_exact(g, h));
  return Ideal(ideal.vars(), std::move(gens), ideal.order());
}

Ideal saturate(const Ideal& ideal, const Polynomial& h) {
  require_same_ring(ideal.vars(), h.vars(), "saturate");
  if (h.is_zero()) throw StructuralError("saturate: the saturating element must be nonzero");
  if (h.is_constant()) return ideal;
  const VariableSet& vars = ideal.vars();
  const std::string w_name = vars.fresh_name("w");
  const VariableSet ring = vars.extended({w_name});
  std::vector<Polynomial> gens = embed_all(ideal.generators(), ring);
  gens.push_back(Polynomial::variable(ring, w_name) * embed(h, ring) - Polynomial::constant(ring, 1));
  return eliminate_fresh(gens, ring, vars, ideal.order());
}

int krull_dimension(const Ideal& ideal) {
  const std::size_t n = ideal.vars().size();
  if (n > 24) throw StructuralError("krull_dimension: too many variables for subset enumeration");
  const auto& gb = ideal.groebner_basis();
  std::vector<std::uint32_t> supports;
  for (const auto& g : gb) {
    const Monomial& lm = leading_monomial(g, ideal.order());
    if (lm.is_one()) return -1;
    std::uint32_t mask = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (lm[v] > 0) mask |= 1u << v;
    supports.push_back(mask);
  }
  int best = 0;
  for (std::uint32_t set = 0; set < (1u << n); ++set) {
    const int size = std::popcount(set);
    if (size <= best) continue;
    const bool independent =
        std::none_of(supports.begin(), supports.end(), [set](std::uint32_t s) { return (s & ~set) == 0; });
    if (independent) best = size;
  }
  return best;
}

LocalMembership local_membership_certificate(const Polynomial& p, const Ideal& ideal, const Ideal& maximal) {
  require_same_ring(ideal.vars(), p.vars(), "local_membership");
  require_same_ring(ideal.vars(), maximal.vars(), "local_membership");
  std::vector<bool> in_m(ideal.vars().size(), false);
  for (const auto& g : maximal.generators()) {
    if (g.term_count() != 1 || g.terms().begin()->first.degree() != 1)
      throw StructuralError("local_membership: the maximal ideal must be generated by variables");
    const Monomial& m = g.terms().begin()->first;
    for (std::size_t v = 0; v < m.size(); ++v)
      if (m[v] > 0) in_m[v] = true;
  }
  if (p.is_zero()) return {true, {Polynomial::constant(p.vars(), 1)}};

  LocalMembership out;
  out.colon_basis = colon(ideal, p).groebner_basis();
  // q lies outside m iff it has a term free of every generator of m.
  auto outside_m = [&](const Polynomial& q) {
    return std::any_of(q.terms().begin(), q.terms().end(), [&](const auto& term) {
      for (std::size_t v = 0; v < in_m.size(); ++v)
        if (in_m[v] && term.first[v] > 0) return false;
      return true;
    });
  };
  out.member = std::any_of(out.colon_basis.begin(), out.colon_basis.end(), outside_m);
  return out;
}

bool local_membership(const Polynomial& p, const Ideal& ideal, const Ideal& maximal) {
  return local_membership_certificate(p, ideal, maximal).member;
}

nlohmann::json to_json(std::span<const Polynomial> polys) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : polys) arr.push_back(to_json(p));
  return arr;
}

nlohmann::json to_json(const Ideal& ideal) {
  nlohmann::json vars = nlohmann::json::array();
  for (const auto& n : ideal.vars().names()) vars.push_back(n);
  return {{"order", ideal.order().tag()}, {"vars", std::move(vars)}, {"generators", to_json(ideal.generators())}};
}

Ideal ideal_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array())
    throw ParseError("ideal JSON: missing \"generators\" array");
  const MonomialOrder order =
      MonomialOrder::from_tag(j.contains("order") ? j["order"].get<std::string>() : std::string("grevlex"));
  std::optional<VariableSet> vars;
  if (j.contains("vars")) {
    std::vector<std::string> names;
    for (const auto& v : j["vars"]) {
      if (!v.is_string()) throw ParseError("ideal JSON: variable names must be strings");
      names.push_back(v.get<std::string>());
    }
    try {
      vars = VariableSet(std::move(names));
    } catch (const StructuralError& e) {
      throw ParseError(std::string("ideal JSON: ") + e.what());
    }
  }
  std::vector<Polynomial> gens;
  for (const auto& g : j["generators"]) {
    if (g.is_string()) {
      if (!vars) throw ParseError("ideal JSON: text generators need a \"vars\" list");
      gens.push_back(parse_polynomial(g.get<std::string>(), *vars));
      continue;
    }
    gens.push_back(vars ? polynomial_from_json(g, *vars) : polynomial_from_json(g));
    if (!vars) vars = gens.back().vars();
    else if (!(gens.back().vars() == *vars)) throw ParseError("ideal JSON: generators use different rings");
  }
  if (!vars) throw ParseError("ideal JSON: cannot determine the ring of an empty ideal without \"vars\"");
  return Ideal(*vars, std::move(gens), order);
}

}  // namespace ringcert
