#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hardy {

/// Everything that determines a check's numbers.
struct InputsFingerprint {
  std::string group;
  std::string norm;
  std::string field;
  double alpha = 0.0;
  std::string settings;
  std::uint64_t seed = 0;
};

/// One evaluated identity, inequality or pointwise statement.
///
/// Identities: lhs and rhs are the two sides. Inequalities: lhs is the
/// smaller side, rhs the larger, ratio = lhs / rhs. In every case
/// pass == (relative_residual <= tolerance).
struct IdentityReport {
  std::string check_name;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double relative_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::optional<double> ratio;
  bool strict = false;
  std::string route;
  std::vector<std::string> flags;
  std::vector<std::pair<std::string, double>> terms;
  InputsFingerprint inputs;
  std::string fingerprint;

  bool has_flag(std::string_view flag) const;
  std::optional<double> term(std::string_view name) const;
};

std::uint64_t fnv1a64(std::string_view text) noexcept;
std::string hex64(std::uint64_t value);

/// "check|group|norm|field|alpha|settings|seed" with round-trip numbers.
std::string canonical_inputs(std::string_view check_name, const InputsFingerprint& inputs);

/// Sets residual, relative_residual, pass and fingerprint for an identity
/// lhs == rhs.
void finish_identity(IdentityReport& report, double floor);

/// Sets residual = max(0, lhs - rhs), relative_residual = max(0, ratio - 1),
/// pass and fingerprint for an inequality lhs <= rhs.
void finish_inequality(IdentityReport& report, double strict_margin);

void stamp_fingerprint(IdentityReport& report);

}  // namespace hardy
