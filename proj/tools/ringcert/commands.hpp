#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ringcert/example.hpp"

namespace ringcert::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Bad flag values or unreadable inputs; mapped to kExitUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { text, json };

struct RunConfig {
  unsigned dim = 3;
  std::size_t precision = 8;
  std::uint64_t seed = 1;
  unsigned n_max = closure::kDefaultMaxExponent;
  std::optional<std::size_t> r_max;
  std::string order = "adapted";
  std::set<std::string> checks;
  std::string out;
  Format format = Format::text;
  unsigned threads = 1;
  /// Largest dimension the suite accepts.
  unsigned dim_cap = 4;
  /// Read the instance from this file instead of building it.
  std::string instance_file;

  /// Enforces d >= 3, d <= dim_cap, 2 <= N <= 32, r_max < N and known check
  /// names. Throws UsageError.
  void validate() const;
  std::optional<MonomialOrder> parsed_order() const;
};

struct EndpieceConfig {
  RunConfig run;
  std::size_t r = 1;
  /// Fixture coefficients a_1, a_2, ... per fiber variable (missing ones are
  /// zero); empty means the seeded series.
  std::vector<std::vector<std::string>> fixtures;
};

struct MembershipConfig {
  std::string ideal_file;
  std::string element_file;
  /// Variable names generating the maximal ideal; empty means global
  /// membership.
  std::vector<std::string> local;
  bool witness = false;
  Format format = Format::text;
  std::string out;
};

/// Each command writes its result to `out` (or cfg.out) and diagnostics to
/// `err`, and returns a process exit code.
int cmd_build(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_endpieces(const EndpieceConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_membership(const MembershipConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace ringcert::cli
