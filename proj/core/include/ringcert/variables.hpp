#pragma once

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ringcert {

/// Ordered list of indeterminate names. The position of a name is its index
/// in every exponent vector, and monomial orders treat earlier variables as
/// larger. Copies share storage; two sets are equal iff their name lists are.
class VariableSet {
 public:
  VariableSet();
  VariableSet(std::initializer_list<std::string> names);
  explicit VariableSet(std::vector<std::string> names);

  std::size_t size() const { return names_->size(); }
  bool empty() const { return names_->empty(); }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  std::span<const std::string> names() const { return *names_; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Like find, but throws StructuralError for an unknown name.
  std::size_t index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }

  /// A new set with `extra` appended. Throws on duplicates.
  VariableSet extended(std::span<const std::string> extra) const;
  VariableSet extended(std::initializer_list<std::string> extra) const;
  /// A name not present in this set, derived from `stem`.
  std::string fresh_name(std::string_view stem) const;

  friend bool operator==(const VariableSet& a, const VariableSet& b);

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

/// Throws StructuralError naming `op` unless the two sets are equal.
void require_same_ring(const VariableSet& a, const VariableSet& b, std::string_view op);

}  // namespace ringcert
