#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ringcert/polynomial.hpp"

// Truncated x-adic arithmetic in Q[y, z, ...][x]/(x^N).
namespace ringcert::series {

/// Stand-in for a transcendental element of x*Q[[x]], known to precision N:
/// a_1 x + ... + a_{N-1} x^{N-1}.
class GenericSeries {
 public:
  /// Coefficients drawn from [1, 9] by a stream keyed on (seed, label).
  /// The stream does not depend on N, so a longer truncation extends a
  /// shorter one. Throws StructuralError for N < 2.
  static GenericSeries make_generic(std::uint64_t seed, std::string label, std::size_t precision);

  /// Explicit coefficients a_1, a_2, ... (missing trailing ones are 0). Zero
  /// coefficients are allowed here, which make_generic never produces; such
  /// series are marked as fixtures and only used to pin hand-computed values.
  static GenericSeries fixture(std::string label, std::vector<Rational> coefficients, std::size_t precision);

  const std::string& label() const { return label_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t precision() const { return precision_; }
  bool is_fixture() const { return fixture_; }
  /// a_1 .. a_{N-1}.
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// Coefficient of x^j; zero for j = 0 and j >= N.
  Rational coefficient(std::size_t j) const;

  friend bool operator==(const GenericSeries&, const GenericSeries&) = default;

 private:
  GenericSeries() = default;

  std::string label_;
  std::uint64_t seed_ = 0;
  std::size_t precision_ = 0;
  bool fixture_ = false;
  std::vector<Rational> coeffs_;
};

/// Element c_0 + c_1 x + ... + c_{N-1} x^{N-1} of R[x]/(x^N), where R is the
/// polynomial ring over the x-free variables `coefficient_ring()`.
class TruncatedElement {
 public:
  /// The zero element.
  TruncatedElement(VariableSet coefficient_ring, std::size_t precision);
  /// Precision is coefficients.size(), which must be positive.
  explicit TruncatedElement(std::vector<Polynomial> coefficients);

  static TruncatedElement constant(const Polynomial& c, std::size_t precision);
  static TruncatedElement from_series(const GenericSeries& s, const VariableSet& coefficient_ring);

  const VariableSet& coefficient_ring() const { return coefficient_ring_; }
  std::size_t precision() const { return coeffs_.size(); }
  const std::vector<Polynomial>& coefficients() const { return coeffs_; }
  const Polynomial& coefficient(std::size_t j) const { return coeffs_.at(j); }
  bool is_zero() const;

  TruncatedElement operator-() const;
  friend TruncatedElement operator+(const TruncatedElement& a, const TruncatedElement& b);
  friend TruncatedElement operator-(const TruncatedElement& a, const TruncatedElement& b);
  friend TruncatedElement operator*(const TruncatedElement& a, const TruncatedElement& b);
  friend TruncatedElement operator*(const Polynomial& c, const TruncatedElement& a);
  TruncatedElement pow(unsigned e) const;

  /// Multiplication by x^k keeping the precision: slots move up by k and the
  /// top k slots fall off.
  TruncatedElement shifted(std::size_t k) const;
  /// Multiplication by x^k that also raises the precision by k, so nothing
  /// is lost (x * f known mod x^M is known mod x^{M+1}).
  TruncatedElement lifted(std::size_t k) const;
  /// Reduction to a lower precision.
  TruncatedElement truncated(std::size_t precision) const;

  friend bool operator==(const TruncatedElement&, const TruncatedElement&) = default;

 private:
  VariableSet coefficient_ring_;
  std::vector<Polynomial> coeffs_;
};

/// Exact product in R[x]/(x^N). Throws StructuralError on mismatched
/// precision or coefficient rings.
TruncatedElement mul_truncated(const TruncatedElement& a, const TruncatedElement& b);

/// {x} followed by the coefficient variables.
VariableSet ambient_ring(const VariableSet& coefficient_ring, std::string_view x = "x");

/// sum_j c_j x^j as a polynomial of `ring`, which must contain `x` and the
/// coefficient variables.
Polynomial to_polynomial(const TruncatedElement& e, const VariableSet& ring, std::string_view x = "x");
/// Inverse of to_polynomial: splits p by powers of x and drops x^N and above.
TruncatedElement truncate(const Polynomial& p, const VariableSet& coefficient_ring, std::size_t precision,
                          std::string_view x = "x");

/// (var - s)^h mod x^N for any h >= 1.
TruncatedElement shifted_power(const VariableSet& coefficient_ring, std::string_view var, const GenericSeries& s,
                               unsigned h);
/// (var - s)^h mod x^N with h >= 2; c_0 is var^h. Throws StructuralError for
/// h < 2.
TruncatedElement square_shifted(const VariableSet& coefficient_ring, std::string_view var, const GenericSeries& s,
                                unsigned h = 2);

/// Splitting e = leading + sum_{j>=1} b_j x^j at level r:
///   endpiece  f_r = sum_{j>=r} b_j x^{j-r}   (precision N - r)
///   u_r       = sum_{j=1}^{r-1} b_j x^{j-1}  (a polynomial in x and R)
/// so that e = x^r f_r + u_r x + leading mod x^N.
struct EndpieceDecomposition {
  std::size_t r = 0;
  TruncatedElement endpiece;
  Polynomial u;
  Polynomial leading;
  /// b_1 .. b_{N-1}; b[j - 1] is the coefficient of x^j.
  std::vector<Polynomial> b;
  /// Ring of `u` (x first).
  VariableSet ring;
};

/// Throws StructuralError unless 1 <= r < N.
EndpieceDecomposition endpiece(const TruncatedElement& e, std::size_t r, std::string_view x = "x");

/// x^r f_r + u_r x + leading, rebuilt at the original precision from the
/// stored parts (u_r via its polynomial form).
TruncatedElement reassemble(const EndpieceDecomposition& d, std::string_view x = "x");

/// {"label": ..., "seed": ..., "N": ..., "coeffs": ["3", ...]}; fixtures add
/// "fixture": true.
nlohmann::json to_json(const GenericSeries& s);
GenericSeries generic_series_from_json(const nlohmann::json& j);
/// List of coefficient polynomials c_0 .. c_{N-1}.
nlohmann::json to_json(const TruncatedElement& e);
TruncatedElement truncated_element_from_json(const nlohmann::json& j, const VariableSet& coefficient_ring);

}  // namespace ringcert::series
