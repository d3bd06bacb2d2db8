#include "hardy/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hardy/group.hpp"

namespace hardy {

bool IdentityReport::has_flag(std::string_view flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

std::optional<double> IdentityReport::term(std::string_view name) const {
  for (const auto& [key, value] : terms) {
    if (key == name) return value;
  }
  return std::nullopt;
}

std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

std::string canonical_inputs(std::string_view check_name, const InputsFingerprint& inputs) {
  std::string out(check_name);
  out += '|' + inputs.group + '|' + inputs.norm + '|' + inputs.field + '|' + format_number(inputs.alpha) + '|' +
         inputs.settings + '|' + std::to_string(inputs.seed);
  return out;
}

void stamp_fingerprint(IdentityReport& report) {
  report.fingerprint = hex64(fnv1a64(canonical_inputs(report.check_name, report.inputs)));
}

void finish_identity(IdentityReport& report, double floor) {
  report.residual = std::abs(report.lhs - report.rhs);
  report.relative_residual = report.residual / std::max(std::abs(report.lhs), floor);
  report.pass = report.relative_residual <= report.tolerance;
  stamp_fingerprint(report);
}

void finish_inequality(IdentityReport& report, double strict_margin) {
  report.residual = std::max(0.0, report.lhs - report.rhs);
  if (report.rhs > 0.0) {
    report.ratio = report.lhs / report.rhs;
  } else {
    report.ratio = report.lhs > 0.0 ? std::numeric_limits<double>::max() : 0.0;
  }
  report.relative_residual = std::max(0.0, *report.ratio - 1.0);
  report.pass = report.relative_residual <= report.tolerance;
  report.strict = *report.ratio < 1.0 - strict_margin;
  stamp_fingerprint(report);
}

}  // namespace hardy
