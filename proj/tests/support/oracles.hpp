#pragma once

// Reference implementations used only by the tests. None of them calls into
// the Groebner engine: they work on plain exponent-vector maps and exact
// linear algebra, so agreement with the library is evidence rather than
// tautology.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ringcert/polynomial.hpp"

namespace oracle {

using Exps = std::vector<std::uint32_t>;
/// Polynomial as exponent vector -> nonzero coefficient.
using NPoly = std::map<Exps, mpq_class>;

inline NPoly from_lib(const ringcert::Polynomial& p) {
  NPoly out;
  for (const auto& [m, c] : p.terms()) out.emplace(Exps(m.exponents().begin(), m.exponents().end()), c);
  return out;
}

inline ringcert::Polynomial to_lib(const NPoly& p, const ringcert::VariableSet& vars) {
  ringcert::Polynomial out(vars);
  for (const auto& [e, c] : p) out += ringcert::Polynomial::monomial(vars, ringcert::Monomial(e), c);
  return out;
}

inline void add_term(NPoly& p, const Exps& e, const mpq_class& c) {
  if (c == 0) return;
  auto [it, fresh] = p.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

inline NPoly add(const NPoly& a, const NPoly& b) {
  NPoly out = a;
  for (const auto& [e, c] : b) add_term(out, e, c);
  return out;
}

inline NPoly scale(const NPoly& a, const mpq_class& c) {
  NPoly out;
  if (c == 0) return out;
  for (const auto& [e, v] : a) out.emplace(e, v * c);
  return out;
}

inline Exps exps_add(const Exps& a, const Exps& b) {
  Exps out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

/// Schoolbook double loop.
inline NPoly mul(const NPoly& a, const NPoly& b) {
  NPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) add_term(out, exps_add(ea, eb), ca * cb);
  return out;
}

inline NPoly power(const NPoly& a, unsigned e, std::size_t nvars) {
  NPoly out{{Exps(nvars, 0), mpq_class(1)}};
  for (unsigned i = 0; i < e; ++i) out = mul(out, a);
  return out;
}

inline unsigned degree(const Exps& e) {
  unsigned d = 0;
  for (auto v : e) d += v;
  return d;
}

inline long total_degree(const NPoly& p) {
  long d = -1;
  for (const auto& [e, c] : p) d = std::max<long>(d, degree(e));
  return d;
}

/// Value at a rational point, by Horner-free direct evaluation.
inline mpq_class evaluate(const NPoly& p, const std::vector<mpq_class>& point) {
  mpq_class sum = 0;
  for (const auto& [e, c] : p) {
    mpq_class term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) term *= point[i];
    sum += term;
  }
  return sum;
}

/// Simultaneous substitution of every variable by an NPoly over `target_nvars`.
inline NPoly compose(const NPoly& p, const std::vector<NPoly>& images, std::size_t target_nvars) {
  NPoly out;
  for (const auto& [e, c] : p) {
    NPoly term{{Exps(target_nvars, 0), c}};
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) term = mul(term, images[i]);
    out = add(out, term);
  }
  return out;
}

/// All exponent vectors in `nvars` variables of total degree <= d.
inline std::vector<Exps> monomials_up_to(std::size_t nvars, unsigned d) {
  std::vector<Exps> out;
  Exps cur(nvars, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i == nvars) {
      out.push_back(cur);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      cur[i] = k;
      self(self, i + 1, left - k);
    }
    cur[i] = 0;
  };
  rec(rec, 0, d);
  return out;
}

/// Row-echelon span of sparse vectors over Q, keyed by exponent vectors.
/// Each stored row has a distinct pivot, its largest key.
class EchelonSpan {
 public:
  /// Reduces v against the stored rows; returns the remainder. Rows are kept
  /// fully reduced, so one pass over the pivots present in v suffices.
  NPoly reduce(NPoly v) const {
    std::vector<std::pair<const NPoly*, mpq_class>> steps;
    for (const auto& [e, c] : v)
      if (auto row = rows_.find(e); row != rows_.end()) steps.emplace_back(&row->second, -c);
    for (const auto& [row, factor] : steps) v = add(v, scale(*row, factor));
    return v;
  }

  /// Adds v to the span; returns false if it was already inside.
  bool insert(const NPoly& v) {
    NPoly r = reduce(v);
    if (r.empty()) return false;
    auto pivot = std::prev(r.end());
    r = scale(r, 1 / mpq_class(pivot->second));
    // Keep every pivot column clean in the other rows so reduce() never
    // needs to revisit a pivot twice.
    const Exps key = std::prev(r.end())->first;
    for (auto& [k, row] : rows_) {
      auto it = row.find(key);
      if (it != row.end()) row = add(row, scale(r, -it->second));
    }
    rows_.emplace(key, std::move(r));
    return true;
  }

  bool contains(const NPoly& v) const { return reduce(v).empty(); }
  std::size_t rank() const { return rows_.size(); }

 private:
  std::map<Exps, NPoly> rows_;
};

/// Degree-bounded linear-algebra membership: does p = sum q_i g_i hold with
/// deg q_i <= deg p + slack? Decides exactly whether such cofactors exist.
inline bool bounded_membership(const NPoly& p, const std::vector<NPoly>& gens, std::size_t nvars,
                               unsigned slack = 4) {
  if (p.empty()) return true;
  const unsigned bound = static_cast<unsigned>(total_degree(p)) + slack;
  EchelonSpan span;
  for (const auto& g : gens) {
    if (g.empty()) continue;
    for (const auto& m : monomials_up_to(nvars, bound)) span.insert(mul(NPoly{{m, mpq_class(1)}}, g));
  }
  return span.contains(p);
}

/// Drops every term of total degree >= k.
inline NPoly truncate_degree(const NPoly& p, unsigned k) {
  NPoly out;
  for (const auto& [e, c] : p)
    if (degree(e) < k) out.emplace(e, c);
  return out;
}

/// Decides p in (gens) + m^K for m the ideal of all variables, exactly.
inline bool member_mod_power_of_maximal(const NPoly& p, const std::vector<NPoly>& gens, std::size_t nvars,
                                        unsigned k) {
  EchelonSpan span;
  for (const auto& g : gens)
    for (const auto& m : monomials_up_to(nvars, k - 1)) {
      NPoly row = truncate_degree(mul(NPoly{{m, mpq_class(1)}}, g), k);
      if (!row.empty()) span.insert(row);
    }
  return span.contains(truncate_degree(p, k));
}

/// Membership in a monomial ideal: every term divisible by some generator.
inline bool in_monomial_ideal(const NPoly& p, const std::vector<Exps>& gens) {
  for (const auto& [e, c] : p) {
    bool divisible = false;
    for (const auto& g : gens) {
      bool div = true;
      for (std::size_t i = 0; i < e.size(); ++i) div = div && g[i] <= e[i];
      divisible = divisible || div;
    }
    if (!divisible) return false;
  }
  return true;
}

/// Newton polyhedron test in two variables: is the point in
/// conv(gens) + R_{>=0}^2? Its lower boundary is a chain of segments between
/// generators, so a single generator or one pair always suffices.
inline bool in_newton_polygon(const std::array<std::uint32_t, 2>& p,
                              const std::vector<std::array<std::uint32_t, 2>>& gens) {
  for (const auto& a : gens)
    if (a[0] <= p[0] && a[1] <= p[1]) return true;
  for (const auto& a : gens)
    for (const auto& b : gens) {
      // Want lam in [0,1] with lam*a + (1-lam)*b <= p coordinatewise, i.e.
      // lam*(a_i - b_i) <= p_i - b_i for i = 0, 1.
      mpq_class lo = 0, hi = 1;
      for (int i = 0; i < 2; ++i) {
        const mpq_class coef = mpq_class(a[i]) - b[i];
        const mpq_class rhs = mpq_class(p[i]) - b[i];
        if (coef > 0) hi = std::min(hi, mpq_class(rhs / coef));
        else if (coef < 0) lo = std::max(lo, mpq_class(rhs / coef));
        else if (rhs < 0) lo = 2;
      }
      if (lo <= hi) return true;
    }
  return false;
}

/// Least k <= k_max with r^k in I^k for a monomial ideal I, by enumerating
/// multisets of k generators.
inline std::optional<unsigned> least_power_exponent(const std::array<std::uint32_t, 2>& r,
                                                    const std::vector<std::array<std::uint32_t, 2>>& gens,
                                                    unsigned k_max) {
  std::vector<std::array<std::uint32_t, 2>> sums{{0, 0}};
  for (unsigned k = 1; k <= k_max; ++k) {
    std::vector<std::array<std::uint32_t, 2>> next;
    for (const auto& s : sums)
      for (const auto& g : gens) next.push_back({s[0] + g[0], s[1] + g[1]});
    // Keep only minimal elements; dominated sums can never help.
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    std::vector<std::array<std::uint32_t, 2>> minimal;
    for (const auto& a : next) {
      bool dominated = false;
      for (const auto& b : next) dominated = dominated || (b != a && b[0] <= a[0] && b[1] <= a[1]);
      if (!dominated) minimal.push_back(a);
    }
    sums = std::move(minimal);
    for (const auto& s : sums)
      if (s[0] <= k * r[0] && s[1] <= k * r[1]) return k;
  }
  return std::nullopt;
}

/// Random polynomial with small integer coefficients.
inline NPoly random_poly(std::mt19937_64& rng, std::size_t nvars, unsigned max_degree, unsigned max_terms,
                         int coeff_bound = 3) {
  std::uniform_int_distribution<unsigned> nterms(1, max_terms);
  std::uniform_int_distribution<int> coeff(-coeff_bound, coeff_bound);
  const auto all = monomials_up_to(nvars, max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  NPoly p;
  const unsigned n = nterms(rng);
  for (unsigned i = 0; i < n; ++i) {
    int c = coeff(rng);
    if (c == 0) c = 1;
    add_term(p, all[pick(rng)], c);
  }
  return p;
}

}  // namespace oracle
