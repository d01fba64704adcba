#include "ringcert/groebner.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "ringcert/errors.hpp"

namespace ringcert {
namespace {

struct Term {
  Monomial m;
  Integer c;
};

// Terms sorted by decreasing monomial under the active order; integer
// coefficients.
using IPoly = std::vector<Term>;

class Arith {
 public:
  explicit Arith(const MonomialOrder& order) : order_(order) {}

  IPoly from_polynomial(const Polynomial& p, Integer* denominator = nullptr) const {
    Integer den = 1;
    for (const auto& [m, c] : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    IPoly out;
    out.reserve(p.term_count());
    for (const auto& [m, c] : p.terms()) out.push_back({m, Integer(c.get_num() * (den / c.get_den()))});
    std::sort(out.begin(), out.end(), [&](const Term& a, const Term& b) { return order_.greater(a.m, b.m); });
    if (denominator) *denominator = den;
    return out;
  }

  static Polynomial to_polynomial(const IPoly& p, const VariableSet& vars, const Rational& divisor = 1) {
    Polynomial::TermMap terms;
    for (const auto& t : p) terms.emplace(t.m, Rational(t.c) / divisor);
    return Polynomial(vars, std::move(terms));
  }

  static Integer content(const IPoly& p) {
    Integer g = 0;
    for (const auto& t : p) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
      if (g == 1) break;
    }
    return g;
  }

  // Divides out the content and makes the leading coefficient positive.
  // Returns the factor the polynomial was divided by (signed).
  static Integer make_primitive(IPoly& p) {
    if (p.empty()) return 1;
    Integer g = content(p);
    if (p.front().c < 0) g = -g;
    if (g != 1)
      for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
    return g;
  }

  // a*p[pf..] + b*shift*q[qf..]
  IPoly combine(const Integer& a, const IPoly& p, std::size_t pf, const Integer& b, const Monomial& shift,
                const IPoly& q, std::size_t qf) const {
    IPoly out;
    out.reserve(p.size() - pf + q.size() - qf);
    std::size_t i = pf, j = qf;
    std::optional<Monomial> qm;
    auto q_monomial = [&]() -> const Monomial& {
      if (!qm) qm = shift * q[j].m;
      return *qm;
    };
    while (i < p.size() || j < q.size()) {
      int cmp;
      if (j == q.size()) {
        cmp = 1;
      } else if (i == p.size()) {
        cmp = -1;
      } else {
        cmp = order_.compare(p[i].m, q_monomial());
      }
      if (cmp > 0) {
        out.push_back({p[i].m, a * p[i].c});
        ++i;
      } else if (cmp < 0) {
        out.push_back({q_monomial(), b * q[j].c});
        qm.reset();
        ++j;
      } else {
        Integer c = a * p[i].c + b * q[j].c;
        if (c != 0) out.push_back({q_monomial(), std::move(c)});
        qm.reset();
        ++i;
        ++j;
      }
    }
    return out;
  }

  const MonomialOrder& order() const { return order_; }

 private:
  const MonomialOrder& order_;
};

// Fully reduces `p` by the divisors in `basis` (indices into `polys`), in
// index order. Returns the remainder r and sets `multiplier` so that
// r = multiplier * p modulo the ideal of the divisors.
IPoly full_reduce(IPoly p, const std::vector<IPoly>& polys, std::span<const std::size_t> basis, const Arith& arith,
                  Rational* multiplier) {
  IPoly done;
  Rational mult = 1;
  std::size_t pos = 0;
  std::size_t steps = 0;
  while (pos < p.size()) {
    const Term& t = p[pos];
    const IPoly* reducer = nullptr;
    for (std::size_t idx : basis) {
      const IPoly& g = polys[idx];
      if (g.front().m.divides(t.m)) {
        reducer = &g;
        break;
      }
    }
    if (reducer == nullptr) {
      done.push_back(std::move(p[pos]));
      ++pos;
      continue;
    }
    const Term& lead = reducer->front();
    Integer d = gcd(t.c, lead.c);
    Integer scale_p = lead.c / d;
    Integer scale_g = -(t.c / d);
    const Monomial shift = t.m.quotient(lead.m);
    p = arith.combine(scale_p, p, pos + 1, scale_g, shift, *reducer, 1);
    pos = 0;
    if (scale_p != 1) {
      for (auto& dt : done) dt.c *= scale_p;
      mult *= scale_p;
    }
    if (++steps % 16 == 0 && !done.empty()) {
      Integer g = gcd(Arith::content(done), Arith::content(p));
      if (g > 1) {
        for (auto& dt : done) mpz_divexact(dt.c.get_mpz_t(), dt.c.get_mpz_t(), g.get_mpz_t());
        for (auto& pt : p) mpz_divexact(pt.c.get_mpz_t(), pt.c.get_mpz_t(), g.get_mpz_t());
        mult /= g;
      }
    }
  }
  if (multiplier) *multiplier = mult;
  return done;
}

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

class Buchberger {
 public:
  Buchberger(const MonomialOrder& order, GroebnerStats* stats) : arith_(order), stats_(stats) {}

  void add_generator(IPoly p) {
    if (p.empty()) return;
    Arith::make_primitive(p);
    // Reduce against the current basis so that no leading monomial of the
    // basis divides the new one.
    p = full_reduce(std::move(p), polys_, basis_, arith_, nullptr);
    if (p.empty()) return;
    Arith::make_primitive(p);
    install(std::move(p));
  }

  void run() {
    while (!pairs_.empty()) {
      const auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        if (int c = arith_.order().compare(a.lcm, b.lcm); c != 0) return c < 0;
        return std::tie(a.j, a.i) < std::tie(b.j, b.i);
      });
      const Pair pair = *best;
      pairs_.erase(best);
      if (stats_) ++stats_->pairs_reduced;
      IPoly s = s_poly(pair);
      IPoly r = full_reduce(std::move(s), polys_, basis_, arith_, nullptr);
      if (r.empty()) {
        if (stats_) ++stats_->zero_reductions;
        continue;
      }
      Arith::make_primitive(r);
      install(std::move(r));
    }
  }

  // Inter-reduces the minimal basis and returns it monic, sorted by
  // increasing leading monomial.
  std::vector<Polynomial> reduced(const VariableSet& vars) {
    std::vector<std::size_t> order(basis_);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return arith_.order().compare(polys_[a].front().m, polys_[b].front().m) < 0;
    });
    std::vector<Polynomial> out;
    out.reserve(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      const IPoly& g = polys_[order[k]];
      std::vector<std::size_t> others;
      for (std::size_t idx : order)
        if (idx != order[k]) others.push_back(idx);
      // The leading term is irreducible by the others (minimal basis), so
      // only the tail changes.
      IPoly tail(g.begin() + 1, g.end());
      Rational mult = 1;
      IPoly rtail = full_reduce(std::move(tail), polys_, others, arith_, &mult);
      // g = lt + tail  ->  lt + rtail/mult; monic after dividing by lc.
      Polynomial::TermMap terms;
      terms.emplace(g.front().m, Rational(1));
      const Rational denom = mult * g.front().c;
      for (const auto& t : rtail) terms.emplace(t.m, Rational(t.c) / denom);
      out.emplace_back(vars, std::move(terms));
    }
    if (stats_) stats_->basis_size = out.size();
    return out;
  }

 private:
  IPoly s_poly(const Pair& pair) const {
    const IPoly& f = polys_[pair.i];
    const IPoly& g = polys_[pair.j];
    const Integer d = gcd(f.front().c, g.front().c);
    const Integer a = g.front().c / d;
    const Integer b = -(f.front().c / d);
    const Monomial sf = pair.lcm.quotient(f.front().m);
    const Monomial sg = pair.lcm.quotient(g.front().m);
    IPoly shifted_f;
    shifted_f.reserve(f.size() - 1);
    for (std::size_t k = 1; k < f.size(); ++k) shifted_f.push_back({sf * f[k].m, f[k].c});
    IPoly s = arith_.combine(a, shifted_f, 0, b, sg, g, 1);
    Arith::make_primitive(s);
    return s;
  }

  // Gebauer-Moeller update.
  void install(IPoly h_poly) {
    const std::size_t h = polys_.size();
    polys_.push_back(std::move(h_poly));
    const Monomial& lh = polys_[h].front().m;

    std::vector<Pair> fresh;
    fresh.reserve(basis_.size());
    for (std::size_t g : basis_) fresh.push_back({g, h, lcm(polys_[g].front().m, lh)});
    if (stats_) stats_->pairs_created += fresh.size();

    std::vector<Pair> kept;
    for (std::size_t k = 0; k < fresh.size(); ++k) {
      const Pair& p = fresh[k];
      bool keep = coprime(polys_[p.i].front().m, lh);
      if (!keep) {
        keep = true;
        for (std::size_t l = k + 1; l < fresh.size() && keep; ++l)
          if (fresh[l].lcm.divides(p.lcm)) keep = false;
        for (const Pair& q : kept)
          if (keep && q.lcm.divides(p.lcm)) keep = false;
      }
      if (keep) kept.push_back(p);
    }
    std::erase_if(kept, [&](const Pair& p) { return coprime(polys_[p.i].front().m, lh); });

    std::erase_if(pairs_, [&](const Pair& p) {
      if (!lh.divides(p.lcm)) return false;
      return lcm(polys_[p.i].front().m, lh) != p.lcm && lcm(polys_[p.j].front().m, lh) != p.lcm;
    });
    pairs_.insert(pairs_.end(), std::make_move_iterator(kept.begin()), std::make_move_iterator(kept.end()));

    std::erase_if(basis_, [&](std::size_t g) { return lh.divides(polys_[g].front().m); });
    basis_.push_back(h);
  }

  Arith arith_;
  GroebnerStats* stats_;
  std::vector<IPoly> polys_;
  std::vector<std::size_t> basis_;
  std::vector<Pair> pairs_;
};

const VariableSet& common_ring(std::span<const Polynomial> polys, std::string_view op) {
  if (polys.empty()) throw StructuralError(std::string(op) + ": no polynomials given");
  for (const auto& p : polys) require_same_ring(polys.front().vars(), p.vars(), op);
  return polys.front().vars();
}

}  // namespace

std::vector<Polynomial> reduced_groebner_basis(std::span<const Polynomial> generators, const MonomialOrder& order,
                                               GroebnerStats* stats) {
  if (generators.empty()) return {};
  const VariableSet& vars = common_ring(generators, "groebner_basis");
  if (!order.fits(vars.size())) throw StructuralError("groebner_basis: order " + order.tag() + " does not fit the ring");
  Buchberger engine(order, stats);
  Arith arith(order);
  for (const auto& g : generators)
    if (!g.is_zero()) engine.add_generator(arith.from_polynomial(g));
  engine.run();
  std::vector<Polynomial> gb = engine.reduced(vars);
  if (!satisfies_buchberger_criterion(gb, order))
    throw std::logic_error("groebner_basis: computed basis fails the S-polynomial audit");
  return gb;
}

const Monomial& leading_monomial(const Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) throw PreconditionError("leading_monomial of the zero polynomial");
  const Monomial* best = nullptr;
  for (const auto& [m, c] : p.terms())
    if (best == nullptr || order.greater(m, *best)) best = &m;
  return *best;
}

Rational leading_coefficient(const Polynomial& p, const MonomialOrder& order) {
  return p.terms().at(leading_monomial(p, order));
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
  require_same_ring(f.vars(), g.vars(), "s_polynomial");
  const Monomial& lf = leading_monomial(f, order);
  const Monomial& lg = leading_monomial(g, order);
  const Monomial l = lcm(lf, lg);
  return f.times_monomial(l.quotient(lf), 1 / leading_coefficient(f, order)) -
         g.times_monomial(l.quotient(lg), 1 / leading_coefficient(g, order));
}

Polynomial reduce_modulo(const Polynomial& p, std::span<const Polynomial> divisors, const MonomialOrder& order) {
  for (const auto& d : divisors) require_same_ring(p.vars(), d.vars(), "reduce_modulo");
  if (p.is_zero()) return p;
  Arith arith(order);
  std::vector<IPoly> polys;
  std::vector<std::size_t> basis;
  for (const auto& d : divisors) {
    if (d.is_zero()) continue;
    basis.push_back(polys.size());
    polys.push_back(arith.from_polynomial(d));
  }
  Integer den;
  IPoly ip = arith.from_polynomial(p, &den);
  Rational mult;
  IPoly r = full_reduce(std::move(ip), polys, basis, arith, &mult);
  return Arith::to_polynomial(r, p.vars(), mult * den);
}

bool satisfies_buchberger_criterion(std::span<const Polynomial> basis, const MonomialOrder& order) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!reduce_modulo(s_polynomial(basis[i], basis[j], order), basis, order).is_zero()) return false;
  return true;
}

}  // namespace ringcert
