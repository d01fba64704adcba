#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ringcert {

/// Exponent vector, one entry per variable of the owning VariableSet.
class Monomial {
 public:
  using Exponent = std::uint32_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps);

  static Monomial variable(std::size_t nvars, std::size_t index, Exponent power = 1);

  std::size_t size() const { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  std::span<const Exponent> exponents() const { return exps_; }
  std::uint64_t degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& other) const;
  /// this / other; other must divide this.
  Monomial quotient(const Monomial& divisor) const;
  /// The same exponents with `v` set to `e`.
  Monomial with(std::size_t v, Exponent e) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool coprime(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  /// Plain lexicographic comparison of exponent vectors; not a term order
  /// choice, only a structural one.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    return a.exps_ <=> b.exps_;
  }

 private:
  std::vector<Exponent> exps_;
  std::uint64_t degree_ = 0;
};

/// Three-way graded reverse lexicographic comparison, earlier variables
/// larger. Returns <0, 0, >0.
int grevlex_compare(const Monomial& a, const Monomial& b);
int lex_compare(const Monomial& a, const Monomial& b);

/// Strict weak ordering placing grevlex-larger monomials first. This is the
/// canonical storage order of Polynomial.
struct GrevlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_compare(a, b) > 0; }
};

}  // namespace ringcert
