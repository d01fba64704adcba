#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ringcert/monomial.hpp"

namespace ringcert {

/// Term order on monomials of a fixed variable set. Variables earlier in the
/// VariableSet are larger.
///
/// An order is a (possibly empty) sequence of elimination blocks followed by
/// a base order on the remaining variables. Each elimination block is
/// compared by grevlex and dominates everything after it. Base orders:
///
///  - grevlex: graded reverse lexicographic.
///  - lex: pure lexicographic.
///  - weighted: weighted degree first, ties broken by reverse lexicographic
///    comparison. Weights are positive, one per base variable.
///
/// block(k) is the elimination order for the first k variables with grevlex
/// on the rest.
class MonomialOrder {
 public:
  enum class Kind { grevlex, lex, weighted };

  static MonomialOrder grevlex() { return MonomialOrder(Kind::grevlex, {}, {}); }
  static MonomialOrder lex() { return MonomialOrder(Kind::lex, {}, {}); }
  /// Throws StructuralError for an empty or non-positive weight vector.
  static MonomialOrder weighted(std::vector<std::uint32_t> weights);
  static MonomialOrder block(std::size_t first_block_size) { return elimination(first_block_size, grevlex()); }
  /// Eliminates k new leading variables ahead of `rest`.
  static MonomialOrder elimination(std::size_t k, const MonomialOrder& rest);

  /// "grevlex", "lex", "wgrevlex:w1,w2,...", each optionally preceded by
  /// elimination blocks "block:k/". A bare "block:k" means "block:k/grevlex".
  /// Throws ParseError otherwise.
  static MonomialOrder from_tag(std::string_view tag);
  std::string tag() const;

  Kind kind() const { return kind_; }
  const std::vector<std::size_t>& blocks() const { return blocks_; }
  const std::vector<std::uint32_t>& weights() const { return weights_; }
  std::size_t eliminated_count() const;

  /// Whether the order is defined on monomials in `nvars` variables.
  bool fits(std::size_t nvars) const;
  /// The base order on the variables at `kept` (indices past the elimination
  /// blocks), in their given order; elimination blocks are dropped.
  MonomialOrder base_restricted(std::span<const std::size_t> kept) const;

  /// <0, 0, >0 as a is smaller, equal, larger than b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  MonomialOrder(Kind kind, std::vector<std::size_t> blocks, std::vector<std::uint32_t> weights)
      : kind_(kind), blocks_(std::move(blocks)), weights_(std::move(weights)) {}

  Kind kind_;
  std::vector<std::size_t> blocks_;
  std::vector<std::uint32_t> weights_;
};

}  // namespace ringcert
