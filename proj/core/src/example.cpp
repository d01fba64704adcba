#include "ringcert/example.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <future>
#include <sstream>

#include "ringcert/errors.hpp"

namespace ringcert::example {

using series::GenericSeries;
using series::TruncatedElement;

namespace {

std::string hex_digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string digest(const ExampleInstance& inst, std::string_view check, std::string_view params = {}) {
  return hex_digest(to_json(inst).dump() + "|" + std::string(check) + "|" + std::string(params));
}

template <typename Fn>
CheckRecord timed(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  CheckRecord rec = fn();
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

CheckRecord new_record(std::string name, std::string inputs_digest = {}) {
  CheckRecord rec;
  rec.name = std::move(name);
  rec.inputs_digest = std::move(inputs_digest);
  return rec;
}

void settle(CheckRecord& rec) { rec.verdict = rec.failures.empty() ? Verdict::pass : Verdict::fail; }

std::string join_basis(const std::vector<Polynomial>& basis) {
  std::string out = "{";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (i) out += ", ";
    out += basis[i].to_string();
  }
  return out + "}";
}

Polynomial truncate_below(const Polynomial& p, std::size_t xi, std::size_t level) {
  Polynomial::TermMap terms;
  for (const auto& [m, c] : p.terms())
    if (m[xi] < level) terms.emplace(m, c);
  return Polynomial(p.vars(), std::move(terms));
}

}  // namespace

std::vector<std::string> fiber_names(unsigned d) {
  if (d == 3) return {"y", "z"};
  std::vector<std::string> out;
  for (unsigned i = 1; i < d; ++i) out.push_back("y_" + std::to_string(i));
  return out;
}

std::vector<std::string> series_labels(unsigned d) {
  if (d == 3) return {"α", "β"};
  std::vector<std::string> out;
  for (unsigned i = 1; i < d; ++i) out.push_back("α_" + std::to_string(i));
  return out;
}

std::vector<Polynomial> ExampleInstance::f_polynomials() const {
  std::vector<Polynomial> out;
  for (const auto& fi : f) out.push_back(series::to_polynomial(fi, ring));
  return out;
}

MonomialOrder ExampleInstance::ring_order() const {
  if (order) return *order;
  std::vector<std::uint32_t> w(ring.size(), static_cast<std::uint32_t>(precision));
  w[ring.index_of("x")] = 1;
  return MonomialOrder::weighted(std::move(w));
}

std::string ExampleInstance::order_tag() const { return order ? order->tag() : "adapted"; }

std::optional<MonomialOrder> parse_instance_order(std::string_view tag) {
  if (tag == "adapted") return std::nullopt;
  return MonomialOrder::from_tag(tag);
}

Ideal ExampleInstance::maximal_ideal() const {
  return Ideal::coordinate(ring, std::vector<std::string>(ring.names().begin(), ring.names().end()), ring_order());
}

ExampleInstance build_from_series(unsigned d, std::vector<GenericSeries> series, std::uint64_t seed,
                                  const std::optional<MonomialOrder>& order) {
  if (d < 3) throw StructuralError("build: dimension must be at least 3");
  const unsigned h = d - 1;
  if (series.size() != h) throw StructuralError("build: need one series per fiber variable");
  const std::size_t n = series.front().precision();
  if (n < 2) throw StructuralError("build: precision must be at least 2");
  for (const auto& s : series)
    if (s.precision() != n) throw StructuralError("build: series precisions differ");

  std::vector<std::string> names = fiber_names(d);
  VariableSet fiber(names);
  VariableSet ring = series::ambient_ring(fiber);

  std::vector<TruncatedElement> f;
  TruncatedElement xi = TruncatedElement::constant(Polynomial::constant(fiber, 1), n);
  for (unsigned i = 0; i < h; ++i) {
    f.push_back(series::square_shifted(fiber, names[i], series[i], h));
    xi = xi * series::shifted_power(fiber, names[i], series[i], 1);
  }
  if (order && !order->fits(ring.size()))
    throw StructuralError("build: order " + order->tag() + " does not fit the ring");
  ExampleInstance inst{d,    h,    n,           seed,          order, std::move(names), std::move(series), fiber,
                       ring, std::move(f), std::move(xi), Ideal::zero(ring)};
  inst.P = Ideal(ring, inst.f_polynomials(), inst.ring_order());
  return inst;
}

ExampleInstance build(unsigned d, std::size_t precision, std::uint64_t seed,
                      const std::optional<MonomialOrder>& order) {
  if (d < 3) throw StructuralError("build: dimension must be at least 3");
  if (precision < 2) throw StructuralError("build: precision must be at least 2");
  std::vector<GenericSeries> series;
  for (const auto& label : series_labels(d)) series.push_back(GenericSeries::make_generic(seed, label, precision));
  return build_from_series(d, std::move(series), seed, order);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::not_applicable:
      return "n/a";
  }
  return "fail";
}

CheckRecord verify_power_identity(const ExampleInstance& inst) {
  CheckRecord rec = new_record("power-identity", digest(inst, "power-identity"));
  TruncatedElement product = TruncatedElement::constant(Polynomial::constant(inst.fiber, 1), inst.precision);
  for (const auto& fi : inst.f) product = product * fi;
  const TruncatedElement power = inst.xi.pow(inst.h);
  const TruncatedElement diff = power - product;
  rec.artifacts["h"] = inst.h;
  rec.artifacts["holds"] = diff.is_zero();
  if (!diff.is_zero()) {
    rec.failures.push_back("power-identity");
    rec.artifacts["difference"] = series::to_json(diff);
    rec.notes.push_back("xi^" + std::to_string(inst.h) +
                        " - prod f_i = " + series::to_polynomial(diff, inst.ring).to_string() + " (mod x^" +
                        std::to_string(inst.precision) + ")");
  } else {
    rec.notes.push_back("xi^" + std::to_string(inst.h) + " = prod f_i holds exactly mod x^" +
                        std::to_string(inst.precision));
  }
  settle(rec);
  return rec;
}

CheckRecord verify_integral_dependence(const ExampleInstance& inst, unsigned max_exponent) {
  CheckRecord rec = verify_power_identity(inst);
  rec.name = "integral-dependence";
  rec.inputs_digest = digest(inst, rec.name, "nmax=" + std::to_string(max_exponent));
  rec.artifacts["expected_n"] = inst.h;

  const MonomialOrder order = inst.ring_order();
  rec.artifacts["order"] = order.tag();
  const Ideal modulus(inst.ring, {inst.x().pow(static_cast<unsigned>(inst.precision))}, order);
  const auto witness = closure::is_integral_over(inst.xi_polynomial(), inst.P.with_order(order), max_exponent, modulus);
  if (!witness) {
    rec.failures.push_back("witness-exponent");
    rec.artifacts["witness"] = nullptr;
    rec.notes.push_back("no reduction equality I*J^(n-1) = J^n found for n <= " + std::to_string(max_exponent));
  } else {
    rec.artifacts["witness"] = closure::to_json(*witness);
    if (witness->n != inst.h) rec.failures.push_back("witness-exponent");
    rec.notes.push_back("reduction witness n = " + std::to_string(witness->n) + " (expected " +
                        std::to_string(inst.h) + ")");
    rec.notes.push_back("GB(P*J^(n-1) + (x^N)) = " + join_basis(witness->lhs_basis));
    rec.notes.push_back("GB(J^n + (x^N))       = " + join_basis(witness->rhs_basis));
  }
  settle(rec);
  return rec;
}

std::vector<LevelMembership> membership_ladder(const ExampleInstance& inst, const Polynomial& p) {
  require_same_ring(inst.ring, p.vars(), "membership_ladder");
  const std::size_t xi = inst.ring.index_of("x");
  const MonomialOrder order = inst.ring_order();
  const Ideal maximal = inst.maximal_ideal();
  const auto fs = inst.f_polynomials();
  std::vector<LevelMembership> out;
  for (std::size_t n = 2; n <= inst.precision; ++n) {
    std::vector<Polynomial> gens;
    for (const auto& fi : fs) gens.push_back(truncate_below(fi, xi, n));
    gens.push_back(inst.x().pow(static_cast<unsigned>(n)));
    const Ideal level(inst.ring, std::move(gens), order);
    auto cert = local_membership_certificate(truncate_below(p, xi, n), level, maximal);
    out.push_back({n, cert.member, std::move(cert.colon_basis)});
  }
  return out;
}

CheckRecord verify_not_integrally_closed(const ExampleInstance& inst) {
  CheckRecord rec = new_record("not-integrally-closed", digest(inst, "not-integrally-closed"));
  rec.artifacts["order"] = inst.ring_order().tag();
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& lvl : membership_ladder(inst, inst.xi_polynomial())) {
    levels.push_back({{"n", lvl.level}, {"member", lvl.member}, {"colon_basis", to_json(lvl.colon_basis)}});
    rec.notes.push_back("n = " + std::to_string(lvl.level) + ": xi " + (lvl.member ? "IS" : "is not") +
                        " in (f_i, x^n) locally; GB(I : xi) = " + join_basis(lvl.colon_basis));
    if (lvl.member) rec.failures.push_back("level-" + std::to_string(lvl.level));
  }
  rec.artifacts["levels"] = std::move(levels);
  settle(rec);
  return rec;
}

PrimeWitnessPresentation prime_witness_presentation(const ExampleInstance& inst, std::size_t r) {
  if (inst.d != 3) throw StructuralError("prime witness: only defined for d = 3");
  if (r < 1 || r >= inst.precision)
    throw StructuralError("prime witness: level r=" + std::to_string(r) + " outside 1.." +
                          std::to_string(inst.precision - 1));
  const std::string fv = "F" + std::to_string(r);
  const std::string gv = "G" + std::to_string(r);
  const VariableSet ring({"x", "y", "z", fv, gv});
  const auto df = series::endpiece(inst.f[0], r);
  const auto dg = series::endpiece(inst.f[1], r);
  const Polynomial x = Polynomial::variable(ring, "x");
  const Polynomial xr = x.pow(static_cast<unsigned>(r));
  Polynomial u = embed(df.u, ring);
  Polynomial v = embed(dg.u, ring);
  Polynomial f_expr = xr * Polynomial::variable(ring, fv) + u * x + embed(df.leading, ring);
  Polynomial g_expr = xr * Polynomial::variable(ring, gv) + v * x + embed(dg.leading, ring);
  const auto n = static_cast<std::uint32_t>(inst.precision);
  MonomialOrder order = inst.order.value_or(MonomialOrder::weighted({1, n, n, 1, 1}));
  if (!order.fits(ring.size())) throw StructuralError("prime witness: order " + order.tag() + " does not fit the ring");
  return {r, ring, fv, gv, std::move(u), std::move(v), std::move(f_expr), std::move(g_expr), std::move(order)};
}

CheckRecord check_prime_witness(const PrimeWitnessPresentation& pres) {
  char name[32];
  std::snprintf(name, sizeof name, "prime-witness-r%02zu", pres.r);
  CheckRecord rec = new_record(name);
  rec.inputs_digest = hex_digest(to_json(pres.f_expr).dump() + to_json(pres.g_expr).dump());
  const VariableSet& ring = pres.ring;
  const Polynomial x = Polynomial::variable(ring, "x");
  const Polynomial y = Polynomial::variable(ring, "y");
  const Polynomial z = Polynomial::variable(ring, "z");
  const Ideal ideal(ring, {pres.f_expr, pres.g_expr}, pres.order);
  rec.artifacts["f_expr"] = to_json(pres.f_expr);
  rec.artifacts["g_expr"] = to_json(pres.g_expr);
  rec.notes.push_back("f_expr = " + pres.f_expr.to_string());
  rec.notes.push_back("g_expr = " + pres.g_expr.to_string());

  // (a)
  const Ideal lhs(ring, {x, pres.f_expr, pres.g_expr}, pres.order);
  const Ideal rhs(ring, {x, y * y, z * z}, pres.order);
  const bool a = ideal_equal(lhs, rhs);
  rec.artifacts["a_leading_form"] = {
      {"holds", a}, {"lhs_basis", to_json(lhs.groebner_basis())}, {"rhs_basis", to_json(rhs.groebner_basis())}};
  rec.notes.push_back(std::string("(a) (x, f, g) = (x, y^2, z^2): ") + (a ? "yes" : "NO") + "; GBs " +
                      join_basis(lhs.groebner_basis()) + " vs " + join_basis(rhs.groebner_basis()));
  if (!a) rec.failures.push_back("a-leading-form");

  // (b)
  const Ideal quotient = colon(ideal, x);
  const bool b = ideal_equal(quotient, ideal);
  rec.artifacts["b_nonzerodivisor"] = {{"holds", b},
                                       {"colon_basis", to_json(quotient.groebner_basis())},
                                       {"ideal_basis", to_json(ideal.groebner_basis())}};
  rec.notes.push_back(std::string("(b) ((f, g) : x) = (f, g): ") + (b ? "yes" : "NO") + "; GB " +
                      join_basis(quotient.groebner_basis()));
  if (!b) rec.failures.push_back("b-nonzerodivisor");

  // (c)
  const int dim = krull_dimension(ideal);
  rec.artifacts["c_dimension"] = {{"dimension", dim}, {"expected", 3}};
  rec.notes.push_back("(c) dim = " + std::to_string(dim) + " (expected 3)");
  if (dim != 3) rec.failures.push_back("c-dimension");

  // (d)
  const Ideal sat = saturate(ideal, x);
  const VariableSet target({"x", "y", "z", "w"});
  const Polynomial tx = Polynomial::variable(target, "x");
  const Polynomial tw = Polynomial::variable(target, "w");
  const Polynomial wr = tw.pow(static_cast<unsigned>(pres.r));
  const Polynomial ty = Polynomial::variable(target, "y");
  const Polynomial tz = Polynomial::variable(target, "z");
  // u involves only x, y and v only x, z, so both embed into the target.
  const std::map<std::string, Polynomial> kernel_map{
      {"x", tx},
      {"y", ty},
      {"z", tz},
      {pres.f_var, -(embed(pres.u, target) * tx + ty * ty) * wr},
      {pres.g_var, -(embed(pres.v, target) * tx + tz * tz) * wr}};
  const Ideal inverse_x(target, {tw * tx - Polynomial::constant(target, 1)}, MonomialOrder::grevlex());
  bool d = true;
  nlohmann::json images = nlohmann::json::array();
  for (const auto& q : sat.groebner_basis()) {
    const Polynomial image = inverse_x.normal_form(substitute(q, kernel_map));
    images.push_back(to_json(image));
    if (!image.is_zero()) d = false;
  }
  rec.artifacts["d_kernel"] = {
      {"holds", d}, {"saturation_basis", to_json(sat.groebner_basis())}, {"images_mod_wx_minus_1", images}};
  rec.notes.push_back(std::string("(d) saturation generators vanish on Q[x,y,z][1/x]: ") + (d ? "yes" : "NO") +
                      "; GB((f, g) : x^inf) = " + join_basis(sat.groebner_basis()));
  if (!d) rec.failures.push_back("d-kernel");

  const bool saturated = ideal_equal(sat, ideal);
  rec.artifacts["saturation_equals_ideal"] = saturated;
  if (b && !saturated) rec.failures.push_back("b-implies-saturated");

  settle(rec);
  return rec;
}

CheckRecord verify_prime_witness(const ExampleInstance& inst, std::size_t r) {
  CheckRecord rec = check_prime_witness(prime_witness_presentation(inst, r));
  rec.inputs_digest = digest(inst, rec.name);
  return rec;
}

VariableSet alpha_beta_ring() { return VariableSet({"x", "y", "z", "α", "β"}); }
VariableSet st_ring() { return VariableSet({"x", "y", "z", "s", "t"}); }

JacobianResult jacobian_ideal(unsigned h) {
  if (h < 2) throw StructuralError("jacobian_ideal: exponent must be at least 2");
  const VariableSet ring = alpha_beta_ring();
  const Polynomial s = Polynomial::variable(ring, "y") - Polynomial::variable(ring, "α");
  const Polynomial t = Polynomial::variable(ring, "z") - Polynomial::variable(ring, "β");
  const Polynomial f = s.pow(h);
  const Polynomial g = t.pow(h);
  const Polynomial det = partial_derivative(f, "α") * partial_derivative(g, "β") -
                         partial_derivative(g, "α") * partial_derivative(f, "β");
  const Polynomial expected = s.pow(h - 1) * t.pow(h - 1);

  JacobianResult out{ring, det, expected, Rational(0), new_record("jacobian")};
  CheckRecord& rec = out.record;
  rec.inputs_digest = hex_digest("jacobian|h=" + std::to_string(h));
  rec.artifacts["determinant"] = to_json(det);
  rec.artifacts["expected_generator"] = to_json(expected);
  rec.notes.push_back("det J = " + det.to_string());

  if (!det.is_zero()) {
    try {
      const Polynomial q = divide_exact(det, expected);
      if (q.is_constant()) out.scalar = q.constant_term();
    } catch (const PreconditionError&) {
    }
  }
  rec.artifacts["scalar"] = format_rational(out.scalar);
  if (out.scalar == 0) rec.failures.push_back("scalar-multiple");

  const Ideal generated(ring, {det});
  const Ideal target(ring, {expected});
  const bool same = !det.is_zero() && ideal_equal(generated, target);
  rec.artifacts["ideal_equal"] = same;
  rec.artifacts["lhs_basis"] = to_json(generated.groebner_basis());
  rec.artifacts["rhs_basis"] = to_json(target.groebner_basis());
  rec.notes.push_back("det J = " + format_rational(out.scalar) + " * (" + expected.to_string() + "); (det J) = (" +
                      expected.to_string() + "): " + (same ? "yes" : "NO"));
  if (!same) rec.failures.push_back("principal-ideal");
  settle(rec);
  return out;
}

JacobianResult jacobian_ideal(const ExampleInstance& inst) {
  if (inst.d != 3) throw StructuralError("jacobian_ideal: only defined for d = 3");
  return jacobian_ideal(inst.h);
}

FreenessDecomposition freeness_decompose(const Polynomial& p) {
  const VariableSet st = st_ring();
  Polynomial rewritten(st);
  if (p.vars() == st) {
    rewritten = p;
  } else if (p.vars() == alpha_beta_ring()) {
    const Polynomial y = Polynomial::variable(st, "y");
    const Polynomial z = Polynomial::variable(st, "z");
    rewritten = substitute(p, {{"x", Polynomial::variable(st, "x")},
                               {"y", y},
                               {"z", z},
                               {"α", y - Polynomial::variable(st, "s")},
                               {"β", z - Polynomial::variable(st, "t")}});
  } else {
    throw StructuralError("freeness_decompose: expected a polynomial over (x, y, z, α, β) or (x, y, z, s, t)");
  }

  const std::size_t si = st.index_of("s");
  const std::size_t ti = st.index_of("t");
  std::array<Polynomial::TermMap, 4> parts;
  for (const auto& [m, c] : rewritten.terms()) {
    const unsigned odd_s = m[si] % 2;
    const unsigned odd_t = m[ti] % 2;
    parts[odd_s + 2 * odd_t].emplace(m.with(si, m[si] - odd_s).with(ti, m[ti] - odd_t), c);
  }
  FreenessDecomposition out{st,
                            rewritten,
                            {Polynomial(st, std::move(parts[0])), Polynomial(st, std::move(parts[1])),
                             Polynomial(st, std::move(parts[2])), Polynomial(st, std::move(parts[3]))}};
  if (reassemble(out) != rewritten) throw std::logic_error("freeness_decompose: reassembly mismatch");
  if (p.vars() == alpha_beta_ring()) {
    const VariableSet ab = alpha_beta_ring();
    const Polynomial back = substitute(
        out.rewritten, {{"x", Polynomial::variable(ab, "x")},
                        {"y", Polynomial::variable(ab, "y")},
                        {"z", Polynomial::variable(ab, "z")},
                        {"s", Polynomial::variable(ab, "y") - Polynomial::variable(ab, "α")},
                        {"t", Polynomial::variable(ab, "z") - Polynomial::variable(ab, "β")}});
    if (back != p) throw std::logic_error("freeness_decompose: coordinate change is not invertible");
  }
  return out;
}

Polynomial reassemble(const FreenessDecomposition& d) {
  const Polynomial s = Polynomial::variable(d.ring, "s");
  const Polynomial t = Polynomial::variable(d.ring, "t");
  return d.components[0] + d.components[1] * s + d.components[2] * t + d.components[3] * s * t;
}

CheckRecord verify_endpieces(const ExampleInstance& inst) {
  CheckRecord rec = new_record("endpieces", digest(inst, "endpieces"));
  nlohmann::json elements = nlohmann::json::array();
  for (std::size_t i = 0; i < inst.f.size(); ++i) {
    const TruncatedElement& e = inst.f[i];
    const std::string& yname = inst.fiber_names[i];
    const std::size_t yi = inst.fiber.index_of(yname);
    nlohmann::json levels = nlohmann::json::array();
    std::vector<series::EndpieceDecomposition> decs;
    for (std::size_t r = 1; r < inst.precision; ++r) decs.push_back(series::endpiece(e, r));

    // b_j lie in Q[y_i] with degree at most h - 1.
    bool degree_ok = true;
    for (const auto& bj : decs.front().b) {
      for (std::size_t v = 0; v < inst.fiber.size(); ++v)
        if (v != yi && bj.involves(v)) degree_ok = false;
      if (bj.degree_in(yi) > static_cast<long>(inst.h) - 1) degree_ok = false;
    }
    if (!degree_ok) rec.failures.push_back("b-degree[" + yname + "]");
    const bool leading_ok = decs.front().leading == Polynomial::variable(inst.fiber, yname, inst.h);
    if (!leading_ok) rec.failures.push_back("leading-part[" + yname + "]");

    for (const auto& dec : decs) {
      const bool identity = series::reassemble(dec) == e;
      bool recurrence = true;
      if (dec.r + 1 < inst.precision) {
        const auto& next = decs[dec.r];
        const TruncatedElement lhs = next.endpiece.lifted(1);
        const TruncatedElement rhs =
            dec.endpiece - TruncatedElement::constant(dec.b[dec.r - 1], dec.endpiece.precision());
        recurrence = lhs == rhs;
      }
      const std::string tag = "[" + yname + ", r=" + std::to_string(dec.r) + "]";
      if (!identity) rec.failures.push_back("identity" + tag);
      if (!recurrence) rec.failures.push_back("recurrence" + tag);
      levels.push_back({{"r", dec.r},
                        {"endpiece", series::to_json(dec.endpiece)},
                        {"u", to_json(dec.u)},
                        {"identity", identity},
                        {"recurrence", dec.r + 1 < inst.precision ? nlohmann::json(recurrence) : nlohmann::json(nullptr)}});
      rec.notes.push_back("f" + tag + " = x^" + std::to_string(dec.r) + "*(" +
                          series::to_polynomial(dec.endpiece, inst.ring).to_string() + ") + (" + dec.u.to_string() +
                          ")*x + " + dec.leading.to_string() + ": " + (identity ? "ok" : "MISMATCH"));
    }
    nlohmann::json bs = nlohmann::json::array();
    for (const auto& bj : decs.front().b) bs.push_back(to_json(bj));
    elements.push_back({{"variable", yname}, {"b", std::move(bs)}, {"levels", std::move(levels)}});
  }
  rec.artifacts["elements"] = std::move(elements);
  settle(rec);
  return rec;
}

const std::vector<std::string>& check_families() {
  static const std::vector<std::string> families{"integral-dependence", "not-integrally-closed", "prime-witness",
                                                 "jacobian",            "endpieces",             "power-identity"};
  return families;
}

VerificationCertificate run_suite(const ExampleInstance& inst, const SuiteOptions& options) {
  for (const auto& name : options.enabled)
    if (std::find(check_families().begin(), check_families().end(), name) == check_families().end())
      throw StructuralError("run_suite: unknown check '" + name + "'");
  auto enabled = [&](const std::string& family) { return options.enabled.empty() || options.enabled.contains(family); };

  std::vector<std::function<CheckRecord()>> tasks;
  std::vector<CheckRecord> records;
  auto not_applicable = [&](const std::string& family) {
    CheckRecord rec = new_record(family, digest(inst, family));
    rec.verdict = Verdict::not_applicable;
    rec.notes.push_back("only defined for d = 3");
    records.push_back(std::move(rec));
  };

  if (enabled("integral-dependence"))
    tasks.emplace_back([&] { return verify_integral_dependence(inst, options.max_exponent); });
  if (enabled("not-integrally-closed")) tasks.emplace_back([&] { return verify_not_integrally_closed(inst); });
  if (enabled("endpieces")) tasks.emplace_back([&] { return verify_endpieces(inst); });
  if (enabled("power-identity")) tasks.emplace_back([&] { return verify_power_identity(inst); });
  if (enabled("prime-witness")) {
    if (inst.d == 3) {
      const std::size_t r_max = options.r_max.value_or(std::min<std::size_t>(6, inst.precision - 1));
      if (r_max >= inst.precision) throw StructuralError("run_suite: r_max must be below the precision");
      for (std::size_t r = 1; r <= r_max; ++r) tasks.emplace_back([&, r] { return verify_prime_witness(inst, r); });
    } else {
      not_applicable("prime-witness");
    }
  }
  if (enabled("jacobian")) {
    if (inst.d == 3) {
      tasks.emplace_back([&] {
        CheckRecord rec = jacobian_ideal(inst).record;
        rec.inputs_digest = digest(inst, "jacobian");
        return rec;
      });
    } else {
      not_applicable("jacobian");
    }
  }

  auto run_one = [](const std::function<CheckRecord()>& task) { return timed(task); };
  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    for (const auto& task : tasks) records.push_back(run_one(task));
  } else {
    for (std::size_t start = 0; start < tasks.size(); start += threads) {
      std::vector<std::future<CheckRecord>> batch;
      for (std::size_t k = start; k < std::min(tasks.size(), start + threads); ++k)
        batch.push_back(std::async(std::launch::async, run_one, std::cref(tasks[k])));
      for (auto& fut : batch) records.push_back(fut.get());
    }
  }
  std::sort(records.begin(), records.end(), [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });

  VerificationCertificate cert{to_json(inst), std::move(records), true};
  for (const auto& rec : cert.checks)
    if (rec.verdict == Verdict::fail) cert.pass = false;
  return cert;
}

nlohmann::json to_json(const VerificationCertificate& cert, bool with_header) {
  nlohmann::json checks = nlohmann::json::array();
  nlohmann::json timing = nlohmann::json::object();
  for (const auto& rec : cert.checks) {
    checks.push_back({{"name", rec.name},
                      {"verdict", to_string(rec.verdict)},
                      {"inputs_digest", rec.inputs_digest},
                      {"failures", rec.failures},
                      {"artifacts", rec.artifacts}});
    timing[rec.name] = rec.seconds;
  }
  nlohmann::json out{{"instance", cert.instance}, {"checks", std::move(checks)}, {"overall", cert.pass ? "pass" : "fail"}};
  if (with_header) out["header"] = {{"tool", "ringcert"}, {"seconds", std::move(timing)}};
  return out;
}

std::string render_text(const VerificationCertificate& cert) {
  std::ostringstream out;
  const auto& inst = cert.instance;
  out << "instance: d=" << inst.value("d", 0) << " h=" << inst.value("h", 0) << " N=" << inst.value("N", 0)
      << " seed=" << inst.value("seed", std::uint64_t{0}) << " order=" << inst.value("order", std::string{}) << "\n";
  for (const auto& rec : cert.checks) {
    std::string verdict = to_string(rec.verdict);
    std::transform(verdict.begin(), verdict.end(), verdict.begin(), [](unsigned char c) { return std::toupper(c); });
    out << "[" << verdict << "] " << rec.name;
    if (!rec.failures.empty()) {
      out << "  failed:";
      for (const auto& f : rec.failures) out << " " << f;
    }
    out << "\n";
    for (const auto& note : rec.notes) out << "    " << note << "\n";
  }
  out << "overall: " << (cert.pass ? "pass" : "fail") << "\n";
  return out.str();
}

nlohmann::json to_json(const ExampleInstance& inst) {
  nlohmann::json series = nlohmann::json::array();
  for (const auto& s : inst.series) series.push_back(series::to_json(s));
  nlohmann::json f = nlohmann::json::array();
  for (const auto& fi : inst.f) f.push_back(series::to_json(fi));
  return {{"d", inst.d},
          {"h", inst.h},
          {"N", inst.precision},
          {"seed", inst.seed},
          {"order", inst.order_tag()},
          {"vars", inst.ring.names()},
          {"series", std::move(series)},
          {"f", std::move(f)},
          {"xi", series::to_json(inst.xi)},
          {"P", to_json(inst.P)}};
}

ExampleInstance instance_from_json(const nlohmann::json& j) {
  try {
    const unsigned d = j.at("d").get<unsigned>();
    const std::uint64_t seed = j.at("seed").get<std::uint64_t>();
    const std::optional<MonomialOrder> order = parse_instance_order(j.value("order", std::string("adapted")));
    std::vector<GenericSeries> series;
    for (const auto& s : j.at("series")) series.push_back(series::generic_series_from_json(s));
    ExampleInstance inst = build_from_series(d, std::move(series), seed, order);
    if (j.contains("N") && j["N"].get<std::size_t>() != inst.precision)
      throw ParseError("instance JSON: N disagrees with the series precision");
    if (j.contains("f")) {
      std::vector<TruncatedElement> f;
      for (const auto& fi : j["f"]) f.push_back(series::truncated_element_from_json(fi, inst.fiber));
      if (f.size() != inst.h) throw ParseError("instance JSON: expected h elements f_i");
      inst.f = std::move(f);
      inst.P = Ideal(inst.ring, inst.f_polynomials(), inst.ring_order());
    }
    if (j.contains("xi")) inst.xi = series::truncated_element_from_json(j["xi"], inst.fiber);
    if (j.contains("P")) {
      Ideal p = ideal_from_json(j["P"]);
      if (!(p.vars() == inst.ring)) throw ParseError("instance JSON: P lives in the wrong ring");
      inst.P = p.with_order(inst.ring_order());
    }
    for (const auto& fi : inst.f)
      if (fi.precision() != inst.precision) throw ParseError("instance JSON: element precision mismatch");
    if (inst.xi.precision() != inst.precision) throw ParseError("instance JSON: element precision mismatch");
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("instance JSON: ") + e.what());
  } catch (const StructuralError& e) {
    throw ParseError(std::string("instance JSON: ") + e.what());
  }
}

}  // namespace ringcert::example
