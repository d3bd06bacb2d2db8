#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardy/report.hpp"
#include "hardy/sharpness.hpp"

namespace hardy::cli {

/// A bundle that does not parse or does not match the schema.
class BundleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Top-level keys: version, config_fingerprint, reports, scans, timings.
struct Bundle {
  std::string version;
  std::string config_fingerprint;
  std::vector<IdentityReport> reports;
  std::vector<SharpnessScanResult> scans;
  std::map<std::string, double> timings;
};

/// Orders reports by fingerprint so output does not depend on run order.
void sort_reports(std::vector<IdentityReport>& reports);

/// JSON text, two-space indent, LF newlines, trailing newline.
std::string dump_bundle(const Bundle& bundle);
/// Parses and validates; unknown or missing keys and wrong types throw.
Bundle parse_bundle(const std::string& text);
Bundle read_bundle(const std::filesystem::path& path);

/// 17 significant digits, '.' separator, no locale.
std::string csv_number(double value);
/// Quotes the cell when it contains a comma, quote or newline.
std::string csv_cell(const std::string& text);

std::string reports_csv(const std::vector<IdentityReport>& reports);
/// Columns L, min_quotient, mu_squared, gap, fitted_exponent_so_far.
std::string scan_csv(const SharpnessScanResult& scan);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace hardy::cli
