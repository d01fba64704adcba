#include "ringcert/variables.hpp"

#include <algorithm>
#include <set>

#include "ringcert/errors.hpp"

namespace ringcert {
namespace {

std::shared_ptr<const std::vector<std::string>> checked(std::vector<std::string> names) {
  std::set<std::string_view> seen;
  for (const auto& n : names) {
    if (n.empty()) throw StructuralError("empty variable name");
    if (!seen.insert(n).second) throw StructuralError("duplicate variable name '" + n + "'");
  }
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

}  // namespace

VariableSet::VariableSet() : names_(std::make_shared<const std::vector<std::string>>()) {}

VariableSet::VariableSet(std::initializer_list<std::string> names)
    : names_(checked(std::vector<std::string>(names))) {}

VariableSet::VariableSet(std::vector<std::string> names) : names_(checked(std::move(names))) {}

std::optional<std::size_t> VariableSet::find(std::string_view name) const {
  const auto it = std::find(names_->begin(), names_->end(), name);
  if (it == names_->end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_->begin());
}

std::size_t VariableSet::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw StructuralError("unknown variable '" + std::string(name) + "'");
}

VariableSet VariableSet::extended(std::span<const std::string> extra) const {
  std::vector<std::string> all(names_->begin(), names_->end());
  all.insert(all.end(), extra.begin(), extra.end());
  return VariableSet(std::move(all));
}

VariableSet VariableSet::extended(std::initializer_list<std::string> extra) const {
  return extended(std::span<const std::string>(extra.begin(), extra.size()));
}

std::string VariableSet::fresh_name(std::string_view stem) const {
  std::string candidate(stem);
  for (int k = 0; contains(candidate); ++k) candidate = std::string(stem) + "_" + std::to_string(k);
  return candidate;
}

bool operator==(const VariableSet& a, const VariableSet& b) {
  return a.names_ == b.names_ || *a.names_ == *b.names_;
}

void require_same_ring(const VariableSet& a, const VariableSet& b, std::string_view op) {
  if (!(a == b)) throw StructuralError(std::string(op) + ": operands belong to different variable sets");
}

}  // namespace ringcert
