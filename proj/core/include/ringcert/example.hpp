#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ringcert/closure.hpp"
#include "ringcert/ideal.hpp"
#include "ringcert/series.hpp"

// A d-dimensional regular local domain with a height h = d-1 prime whose
// extension to the completion is not integrally closed, built at x-adic
// precision N, together with machine checks of the claims that can be
// decided at finite precision.
//
// With s_i = y_i - alpha_i (alpha_i generic in x*Q[[x]]):
//   f_i = s_i^h,  xi = s_1 * ... * s_h,  P = (f_1, ..., f_h).
// For d = 3 the variables are named y, z and the series alpha, beta.
namespace ringcert::example {

struct ExampleInstance {
  unsigned d = 0;
  unsigned h = 0;
  std::size_t precision = 0;
  std::uint64_t seed = 0;
  /// Requested term order; empty selects the x-adic weighted orders below.
  std::optional<MonomialOrder> order;
  /// y, z (d = 3) or y_1 .. y_h.
  std::vector<std::string> fiber_names;
  std::vector<series::GenericSeries> series;
  /// The x-free coefficient ring of every truncated element.
  VariableSet fiber;
  /// {x} followed by the fiber variables.
  VariableSet ring;
  std::vector<series::TruncatedElement> f;
  series::TruncatedElement xi;
  /// Generated by the f_i as polynomials of `ring`.
  Ideal P;

  Polynomial x() const { return Polynomial::variable(ring, "x"); }
  Polynomial xi_polynomial() const { return series::to_polynomial(xi, ring); }
  std::vector<Polynomial> f_polynomials() const;
  /// (x, y_1, ..., y_h).
  Ideal maximal_ideal() const;
  /// The requested order, or weighted grevlex with weight 1 on x and N on
  /// every fiber variable. Below x^N the weights make y_i^h lead f_i, so the
  /// truncated data behave like their leading forms.
  MonomialOrder ring_order() const;
  /// "adapted" or the requested order's tag.
  std::string order_tag() const;
};

/// Throws StructuralError for d < 3 or N < 2, or if `order` does not fit
/// the ring.
ExampleInstance build(unsigned d, std::size_t precision, std::uint64_t seed,
                      const std::optional<MonomialOrder>& order = std::nullopt);
/// Same construction from explicit series (one per fiber variable, all of
/// precision N); used for fixtures with hand-checkable coefficients.
ExampleInstance build_from_series(unsigned d, std::vector<series::GenericSeries> series, std::uint64_t seed,
                                  const std::optional<MonomialOrder>& order = std::nullopt);
/// Parses "adapted" (returns nothing) or any MonomialOrder tag.
std::optional<MonomialOrder> parse_instance_order(std::string_view tag);

/// Fiber variable names and series labels for dimension d.
std::vector<std::string> fiber_names(unsigned d);
std::vector<std::string> series_labels(unsigned d);

enum class Verdict { pass, fail, not_applicable };
std::string to_string(Verdict v);

struct CheckRecord {
  std::string name;
  std::string inputs_digest;
  Verdict verdict = Verdict::fail;
  /// Names of the sub-checks that failed.
  std::vector<std::string> failures;
  nlohmann::json artifacts = nlohmann::json::object();
  /// Human-readable artifact lines for the text rendering.
  std::vector<std::string> notes;
  double seconds = 0.0;
};

/// xi^h = f_1 ... f_h exactly mod x^N, and the reduction criterion holds
/// for xi over P (modulo x^N) with least exponent exactly h.
CheckRecord verify_integral_dependence(const ExampleInstance& inst,
                                       unsigned max_exponent = closure::kDefaultMaxExponent);

struct LevelMembership {
  std::size_t level = 0;
  bool member = false;
  std::vector<Polynomial> colon_basis;
};

/// Local membership of `p` in (f_1, ..., f_h, x^n) at (x, y_1, ..., y_h)
/// for n = 2 .. N. Generators and p are truncated below x^n first, which
/// leaves both the ideal and the colon ideal unchanged.
std::vector<LevelMembership> membership_ladder(const ExampleInstance& inst, const Polynomial& p);

/// xi is a local non-member at every level of the ladder.
CheckRecord verify_not_integrally_closed(const ExampleInstance& inst);

/// Polynomial presentation of the ring at endpiece level r (d = 3 only):
/// Q[x, y, z, F_r, G_r] with
///   f_expr = x^r F_r + u_r x + y^2,  g_expr = x^r G_r + v_r x + z^2.
struct PrimeWitnessPresentation {
  std::size_t r = 0;
  VariableSet ring;
  std::string f_var;
  std::string g_var;
  Polynomial u;
  Polynomial v;
  Polynomial f_expr;
  Polynomial g_expr;
  /// The instance's requested order, or weights (1, N, N, 1, 1), which make
  /// y^2 and z^2 lead f_expr and g_expr for every r < N.
  MonomialOrder order = MonomialOrder::grevlex();
};

/// Throws StructuralError unless d = 3 and 1 <= r < N.
PrimeWitnessPresentation prime_witness_presentation(const ExampleInstance& inst, std::size_t r);

/// The four proof obligations for P_r prime of height two:
///   a-leading-form:     (x, f_expr, g_expr) = (x, y^2, z^2)
///   b-nonzerodivisor:   ((f_expr, g_expr) : x) = (f_expr, g_expr)
///   c-dimension:        dim Q[x,y,z,F,G]/(f_expr, g_expr) = 3
///   d-kernel:           every generator of the saturation by x maps to 0
///                       under F -> -(u x + y^2) w^r, G -> -(v x + z^2) w^r
///                       modulo (w x - 1)
/// plus the consistency check that (b) makes the saturation equal the ideal.
CheckRecord check_prime_witness(const PrimeWitnessPresentation& pres);
CheckRecord verify_prime_witness(const ExampleInstance& inst, std::size_t r);

struct JacobianResult {
  VariableSet ring;
  Polynomial determinant;
  Polynomial expected_generator;
  Rational scalar;
  CheckRecord record;
};

/// In Q[x, y, z, α, β] with f = (y-α)^h, g = (z-β)^h: the determinant of
/// [[df/dα, dg/dα], [df/dβ, dg/dβ]] generates ((y-α)^{h-1} (z-β)^{h-1}).
JacobianResult jacobian_ideal(unsigned h = 2);
/// Throws StructuralError unless inst.d = 3.
JacobianResult jacobian_ideal(const ExampleInstance& inst);

/// p = c0 + c1 s + c2 t + c3 s t with every c_i even in s and t, i.e. an
/// element of Q[x, y, z, s^2, t^2] = Q[x, y, z, f, g].
struct FreenessDecomposition {
  /// Q[x, y, z, s, t].
  VariableSet ring;
  /// p rewritten in s, t coordinates.
  Polynomial rewritten;
  std::array<Polynomial, 4> components;
};

/// Accepts p in Q[x, y, z, α, β] (rewritten through α = y - s, β = z - t)
/// or directly in Q[x, y, z, s, t]. Throws std::logic_error if the parts do
/// not reassemble to p.
FreenessDecomposition freeness_decompose(const Polynomial& p);
Polynomial reassemble(const FreenessDecomposition& d);
/// The variable sets freeness_decompose accepts.
VariableSet alpha_beta_ring();
VariableSet st_ring();

struct SuiteOptions {
  /// Check families to run; empty means all. Known families:
  /// integral-dependence, not-integrally-closed, prime-witness, jacobian,
  /// endpieces, power-identity.
  std::set<std::string> enabled;
  unsigned max_exponent = closure::kDefaultMaxExponent;
  /// Highest endpiece level for prime witnesses; default min(6, N-1).
  std::optional<std::size_t> r_max;
  /// Checks may run concurrently; the certificate does not depend on this.
  unsigned threads = 1;
};

const std::vector<std::string>& check_families();

struct VerificationCertificate {
  nlohmann::json instance;
  /// Sorted by name.
  std::vector<CheckRecord> checks;
  bool pass = false;
};

CheckRecord verify_endpieces(const ExampleInstance& inst);
CheckRecord verify_power_identity(const ExampleInstance& inst);

/// Runs every enabled check. Failures are recorded, never thrown; the
/// certificate passes iff every enabled, applicable check passed. Throws
/// StructuralError for unknown family names.
VerificationCertificate run_suite(const ExampleInstance& inst, const SuiteOptions& options = {});

/// Certificate body plus a "header" object holding timings; the body is a
/// deterministic function of instance and options.
nlohmann::json to_json(const VerificationCertificate& cert, bool with_header = true);
std::string render_text(const VerificationCertificate& cert);

nlohmann::json to_json(const ExampleInstance& inst);
/// Reads an instance back. The truncated elements and P are taken from the
/// file as given, so edits to them are visible to the checks.
ExampleInstance instance_from_json(const nlohmann::json& j);

}  // namespace ringcert::example
