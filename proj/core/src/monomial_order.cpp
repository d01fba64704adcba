#include "ringcert/monomial_order.hpp"

#include <charconv>
#include <numeric>

#include "ringcert/errors.hpp"

namespace ringcert {
namespace {

// grevlex restricted to the index range [lo, hi).
int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

int lex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  for (std::size_t i = lo; i < hi; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

int weighted_range(const Monomial& a, const Monomial& b, std::size_t lo, std::span<const std::uint32_t> w) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    da += std::uint64_t{w[i]} * a[lo + i];
    db += std::uint64_t{w[i]} * b[lo + i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = lo + w.size(); i-- > lo;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

std::size_t parse_count(std::string_view digits, std::string_view tag) {
  std::size_t k = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
    throw ParseError("unknown monomial order '" + std::string(tag) + "'");
  return k;
}

}  // namespace

MonomialOrder MonomialOrder::weighted(std::vector<std::uint32_t> weights) {
  if (weights.empty()) throw StructuralError("weighted order: no weights given");
  for (auto w : weights)
    if (w == 0) throw StructuralError("weighted order: weights must be positive");
  return MonomialOrder(Kind::weighted, {}, std::move(weights));
}

MonomialOrder MonomialOrder::elimination(std::size_t k, const MonomialOrder& rest) {
  if (k == 0) return rest;
  std::vector<std::size_t> blocks{k};
  blocks.insert(blocks.end(), rest.blocks_.begin(), rest.blocks_.end());
  return MonomialOrder(rest.kind_, std::move(blocks), rest.weights_);
}

MonomialOrder MonomialOrder::from_tag(std::string_view tag) {
  std::vector<std::size_t> blocks;
  std::string_view rest = tag;
  while (rest.starts_with("block:")) {
    const auto slash = rest.find('/');
    const std::size_t k = parse_count(rest.substr(6, slash == std::string_view::npos ? rest.npos : slash - 6), tag);
    if (k == 0) throw ParseError("unknown monomial order '" + std::string(tag) + "'");
    blocks.push_back(k);
    rest = slash == std::string_view::npos ? std::string_view("grevlex") : rest.substr(slash + 1);
  }
  MonomialOrder base = grevlex();
  if (rest == "lex") {
    base = lex();
  } else if (rest.starts_with("wgrevlex:")) {
    std::vector<std::uint32_t> weights;
    std::string_view list = rest.substr(9);
    while (true) {
      const auto comma = list.find(',');
      const std::size_t w = parse_count(list.substr(0, comma), tag);
      if (w == 0 || w > UINT32_MAX) throw ParseError("monomial order '" + std::string(tag) + "': bad weight");
      weights.push_back(static_cast<std::uint32_t>(w));
      if (comma == std::string_view::npos) break;
      list = list.substr(comma + 1);
    }
    base = weighted(std::move(weights));
  } else if (rest != "grevlex") {
    throw ParseError("unknown monomial order '" + std::string(tag) + "'");
  }
  base.blocks_ = std::move(blocks);
  return base;
}

std::string MonomialOrder::tag() const {
  std::string out;
  for (auto k : blocks_) out += "block:" + std::to_string(k) + "/";
  switch (kind_) {
    case Kind::grevlex:
      if (!blocks_.empty()) out.pop_back();
      else out = "grevlex";
      break;
    case Kind::lex:
      out += "lex";
      break;
    case Kind::weighted:
      out += "wgrevlex:";
      for (std::size_t i = 0; i < weights_.size(); ++i) out += (i ? "," : "") + std::to_string(weights_[i]);
      break;
  }
  return out;
}

std::size_t MonomialOrder::eliminated_count() const { return std::accumulate(blocks_.begin(), blocks_.end(), std::size_t{0}); }

bool MonomialOrder::fits(std::size_t nvars) const {
  const std::size_t lead = eliminated_count();
  if (lead > nvars) return false;
  return kind_ != Kind::weighted || lead + weights_.size() == nvars;
}

MonomialOrder MonomialOrder::base_restricted(std::span<const std::size_t> kept) const {
  if (kind_ != Kind::weighted) return MonomialOrder(kind_, {}, {});
  const std::size_t lead = eliminated_count();
  std::vector<std::uint32_t> w;
  for (auto i : kept) {
    if (i < lead || i - lead >= weights_.size()) throw StructuralError("base_restricted: index outside the base block");
    w.push_back(weights_[i - lead]);
  }
  return weighted(std::move(w));
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  std::size_t lo = 0;
  for (auto k : blocks_) {
    const std::size_t hi = std::min(lo + k, a.size());
    if (int c = grevlex_range(a, b, lo, hi); c != 0) return c;
    lo = hi;
  }
  if (lo == 0 && kind_ == Kind::grevlex) return grevlex_compare(a, b);
  switch (kind_) {
    case Kind::grevlex:
      return grevlex_range(a, b, lo, a.size());
    case Kind::lex:
      return lex_range(a, b, lo, a.size());
    case Kind::weighted:
      return weighted_range(a, b, lo, weights_);
  }
  return 0;
}

}  // namespace ringcert
