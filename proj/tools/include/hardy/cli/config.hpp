#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hardy/quadrature.hpp"
#include "hardy/quasi_norm.hpp"
#include "hardy/tolerance.hpp"

namespace hardy::cli {

/// Malformed configuration; `line` is 1-based, 0 when not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct NormEntry {
  NormFamily family = NormFamily::p_sum;
  double p = 2.0;

  QuasiNorm make(const GroupSpec& spec) const;
  std::string token() const;  // "p-sum:2", "max", "euclidean", "koranyi"
};

struct GroupEntry {
  std::string name;
  std::vector<double> nu;
  std::vector<NormEntry> norms;
};

/// Field families: bump, phase-bump (bump * exp(i frequency |x|)), product
/// (bump * (1 + x_1/2 + x_1 x_n/4)), angular (bump * x_axis / |x|^nu_axis).
struct FieldEntry {
  std::string name;
  std::string family = "bump";
  double center = 2.0;
  double width = 1.0;
  double frequency = 1.0;
  std::size_t axis = 0;
};

struct SharpnessCase {
  double Q = 3.0;
  double alpha = 0.0;
};

struct RunConfig {
  QuadratureSettings quadrature;
  ToleranceProfile tolerance;

  std::vector<double> alphas{-1.0, -0.3, 0.0, 0.7, 1.0};
  std::vector<std::string> checks;  // empty: every check
  std::set<std::pair<std::string, std::string>> expect_reject;  // (check, group name)
  std::size_t samples = 200;
  std::uint64_t sample_seed = 7;

  std::vector<GroupEntry> groups;
  std::vector<FieldEntry> fields;

  std::vector<SharpnessCase> cases;
  std::vector<double> log_lengths;
  int grid_size = 8192;
  std::string extremizer_group;  // empty: no extremizer table
  std::size_t extremizer_norm = 0;
  double extremizer_alpha = 0.0;
  double taper = 1.0;
  std::vector<double> plateaus;

  std::string out_dir;
  bool timings = false;

  /// Sorted sections and keys, every value spelled out, round-trip numbers.
  std::string canonical() const;
  /// fnv1a64 of the canonical text, as 16 hex digits.
  std::string fingerprint() const;

  const GroupEntry& group(const std::string& name) const;
  bool check_enabled(const std::string& check) const;
};

/// Every check name the driver knows.
const std::vector<std::string>& known_checks();

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace hardy::cli
