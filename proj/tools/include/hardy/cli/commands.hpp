#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hardy/cli/bundle.hpp"
#include "hardy/cli/config.hpp"

namespace hardy::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_config = 2, exit_hypothesis = 3 };

/// Overrides the output directory when set (below --out, above the config).
inline constexpr const char* kOutDirVariable = "HARDY_OUT_DIR";

std::filesystem::path resolve_out_dir(const std::optional<std::filesystem::path>& flag, const RunConfig& config);

struct VerifyOutcome {
  std::vector<IdentityReport> reports;  // sorted by fingerprint
  std::vector<std::string> unexpected_rejections;
  double seconds = 0.0;
};

/// Runs every enabled check over groups x norms x fields x alphas.
/// `only` restricts to one check name (must be known).
VerifyOutcome run_verify(const RunConfig& config, const std::optional<std::string>& only);

struct SharpnessOutcome {
  std::vector<SharpnessScanResult> scans;
  std::vector<IdentityReport> extremizer_reports;  // ckn_inequality per plateau
  std::vector<std::string> failures;
  double seconds = 0.0;
};

SharpnessOutcome run_sharpness(const RunConfig& config);

int cmd_verify(const std::filesystem::path& config_path, const std::optional<std::string>& only,
               const std::optional<std::filesystem::path>& out_dir, std::ostream& out, std::ostream& err);
int cmd_sharpness(const std::filesystem::path& config_path, const std::optional<std::filesystem::path>& out_dir,
                  std::ostream& out, std::ostream& err);
int cmd_report(const std::vector<std::filesystem::path>& bundles, std::ostream& out, std::ostream& err);

/// Version string written into bundles.
std::string tool_version();

}  // namespace hardy::cli
