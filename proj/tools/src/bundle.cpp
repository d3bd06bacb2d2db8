#include "hardy/cli/bundle.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hardy::cli {

namespace {

using nlohmann::json;

json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

json report_to_json(const IdentityReport& r) {
  json terms = json::object();
  for (const auto& [name, value] : r.terms) terms[name] = number(value);
  return json{{"check_name", r.check_name},
              {"lhs", number(r.lhs)},
              {"rhs", number(r.rhs)},
              {"residual", number(r.residual)},
              {"relative_residual", number(r.relative_residual)},
              {"tolerance", number(r.tolerance)},
              {"pass", r.pass},
              {"ratio", r.ratio ? number(*r.ratio) : json(nullptr)},
              {"strict", r.strict},
              {"route", r.route},
              {"flags", r.flags},
              {"terms", terms},
              {"inputs",
               {{"group", r.inputs.group},
                {"norm", r.inputs.norm},
                {"field", r.inputs.field},
                {"alpha", number(r.inputs.alpha)},
                {"settings", r.inputs.settings},
                {"seed", r.inputs.seed}}},
              {"fingerprint", r.fingerprint}};
}

json scan_to_json(const SharpnessScanResult& s) {
  json records = json::array();
  for (const ScanRecord& rec : s.records) {
    records.push_back({{"log_length", number(rec.log_length)},
                       {"quotient", number(rec.quotient)},
                       {"gap", number(rec.gap)},
                       {"profile_exponent", number(rec.profile_exponent)},
                       {"fitted_decay_so_far", number(rec.fitted_decay_so_far)},
                       {"method", rec.method}});
  }
  return json{{"Q", number(s.Q)},
              {"alpha", number(s.alpha)},
              {"mu", number(s.mu)},
              {"grid_size", s.grid_size},
              {"records", records},
              {"decay_exponent", number(s.decay_exponent)},
              {"extrapolated_limit", number(s.extrapolated_limit)},
              {"gaps_positive", s.gaps_positive},
              {"monotone", s.monotone}};
}

// Schema checks: exact key sets and value types.
void expect_keys(const json& obj, const std::set<std::string>& keys, const std::string& where) {
  if (!obj.is_object()) throw BundleError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!keys.contains(key)) throw BundleError(where + ": unknown key '" + key + "'");
  }
  for (const std::string& key : keys) {
    if (!obj.contains(key)) throw BundleError(where + ": missing key '" + key + "'");
  }
}

double get_number(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!v.is_number()) throw BundleError(where + "." + key + ": expected a number");
  return v.get<double>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_string()) throw BundleError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

bool get_bool(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw BundleError(where + "." + key + ": expected a boolean");
  return v.get<bool>();
}

IdentityReport report_from_json(const json& j, const std::string& where) {
  expect_keys(j,
              {"check_name", "lhs", "rhs", "residual", "relative_residual", "tolerance", "pass", "ratio", "strict",
               "route", "flags", "terms", "inputs", "fingerprint"},
              where);
  IdentityReport r;
  r.check_name = get_string(j, "check_name", where);
  r.lhs = get_number(j, "lhs", where);
  r.rhs = get_number(j, "rhs", where);
  r.residual = get_number(j, "residual", where);
  r.relative_residual = get_number(j, "relative_residual", where);
  r.tolerance = get_number(j, "tolerance", where);
  r.pass = get_bool(j, "pass", where);
  if (!j.at("ratio").is_null()) r.ratio = get_number(j, "ratio", where);
  r.strict = get_bool(j, "strict", where);
  r.route = get_string(j, "route", where);
  if (!j.at("flags").is_array()) throw BundleError(where + ".flags: expected an array");
  for (const json& f : j.at("flags")) {
    if (!f.is_string()) throw BundleError(where + ".flags: expected strings");
    r.flags.push_back(f.get<std::string>());
  }
  const json& terms = j.at("terms");
  if (!terms.is_object()) throw BundleError(where + ".terms: expected an object");
  for (const auto& [name, value] : terms.items()) r.terms.emplace_back(name, get_number(terms, name, where + ".terms"));
  const json& in = j.at("inputs");
  const std::string iw = where + ".inputs";
  expect_keys(in, {"group", "norm", "field", "alpha", "settings", "seed"}, iw);
  r.inputs.group = get_string(in, "group", iw);
  r.inputs.norm = get_string(in, "norm", iw);
  r.inputs.field = get_string(in, "field", iw);
  r.inputs.alpha = get_number(in, "alpha", iw);
  r.inputs.settings = get_string(in, "settings", iw);
  if (!in.at("seed").is_number_unsigned()) throw BundleError(iw + ".seed: expected an unsigned integer");
  r.inputs.seed = in.at("seed").get<std::uint64_t>();
  r.fingerprint = get_string(j, "fingerprint", where);
  return r;
}

SharpnessScanResult scan_from_json(const json& j, const std::string& where) {
  expect_keys(j,
              {"Q", "alpha", "mu", "grid_size", "records", "decay_exponent", "extrapolated_limit", "gaps_positive",
               "monotone"},
              where);
  SharpnessScanResult s;
  s.Q = get_number(j, "Q", where);
  s.alpha = get_number(j, "alpha", where);
  s.mu = get_number(j, "mu", where);
  if (!j.at("grid_size").is_number_integer()) throw BundleError(where + ".grid_size: expected an integer");
  s.grid_size = j.at("grid_size").get<int>();
  s.decay_exponent = get_number(j, "decay_exponent", where);
  s.extrapolated_limit = get_number(j, "extrapolated_limit", where);
  s.gaps_positive = get_bool(j, "gaps_positive", where);
  s.monotone = get_bool(j, "monotone", where);
  if (!j.at("records").is_array()) throw BundleError(where + ".records: expected an array");
  std::size_t i = 0;
  for (const json& rj : j.at("records")) {
    const std::string rw = where + ".records[" + std::to_string(i++) + "]";
    expect_keys(rj, {"log_length", "quotient", "gap", "profile_exponent", "fitted_decay_so_far", "method"}, rw);
    ScanRecord rec;
    rec.log_length = get_number(rj, "log_length", rw);
    rec.quotient = get_number(rj, "quotient", rw);
    rec.gap = get_number(rj, "gap", rw);
    rec.profile_exponent = get_number(rj, "profile_exponent", rw);
    rec.fitted_decay_so_far = get_number(rj, "fitted_decay_so_far", rw);
    rec.method = get_string(rj, "method", rw);
    s.records.push_back(rec);
  }
  return s;
}

}  // namespace

void sort_reports(std::vector<IdentityReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const IdentityReport& a, const IdentityReport& b) {
    return std::tie(a.fingerprint, a.check_name) < std::tie(b.fingerprint, b.check_name);
  });
}

std::string dump_bundle(const Bundle& bundle) {
  json reports = json::array();
  for (const IdentityReport& r : bundle.reports) reports.push_back(report_to_json(r));
  json scans = json::array();
  for (const SharpnessScanResult& s : bundle.scans) scans.push_back(scan_to_json(s));
  json timings = json::object();
  for (const auto& [k, v] : bundle.timings) timings[k] = number(v);
  const json j{{"version", bundle.version},
               {"config_fingerprint", bundle.config_fingerprint},
               {"reports", reports},
               {"scans", scans},
               {"timings", timings}};
  return j.dump(2) + "\n";
}

Bundle parse_bundle(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw BundleError(std::string("not valid JSON: ") + e.what());
  }
  try {
    expect_keys(j, {"version", "config_fingerprint", "reports", "scans", "timings"}, "bundle");
    Bundle b;
    b.version = get_string(j, "version", "bundle");
    b.config_fingerprint = get_string(j, "config_fingerprint", "bundle");
    if (!j.at("reports").is_array()) throw BundleError("bundle.reports: expected an array");
    if (!j.at("scans").is_array()) throw BundleError("bundle.scans: expected an array");
    if (!j.at("timings").is_object()) throw BundleError("bundle.timings: expected an object");
    std::size_t i = 0;
    for (const json& r : j.at("reports")) b.reports.push_back(report_from_json(r, "reports[" + std::to_string(i++) + "]"));
    i = 0;
    for (const json& s : j.at("scans")) b.scans.push_back(scan_from_json(s, "scans[" + std::to_string(i++) + "]"));
    for (const auto& [k, v] : j.at("timings").items()) b.timings[k] = get_number(j.at("timings"), k, "timings");
    return b;
  } catch (const json::exception& e) {
    throw BundleError(std::string("schema mismatch: ") + e.what());
  }
}

Bundle read_bundle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BundleError("cannot read '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_bundle(text.str());
  } catch (const BundleError& e) {
    throw BundleError(path.string() + ": " + e.what());
  }
}

std::string csv_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string csv_cell(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string reports_csv(const std::vector<IdentityReport>& reports) {
  std::string out =
      "fingerprint,check_name,group,norm,field,alpha,route,lhs,rhs,residual,relative_residual,tolerance,ratio,strict,"
      "pass,flags\n";
  for (const IdentityReport& r : reports) {
    std::string flags;
    for (std::size_t i = 0; i < r.flags.size(); ++i) flags += (i ? ";" : "") + r.flags[i];
    out += r.fingerprint + "," + csv_cell(r.check_name) + "," + csv_cell(r.inputs.group) + "," +
           csv_cell(r.inputs.norm) + "," + csv_cell(r.inputs.field) + "," + csv_number(r.inputs.alpha) + "," +
           csv_cell(r.route) + "," + csv_number(r.lhs) + "," + csv_number(r.rhs) + "," + csv_number(r.residual) +
           "," + csv_number(r.relative_residual) + "," + csv_number(r.tolerance) + "," +
           (r.ratio ? csv_number(*r.ratio) : std::string()) + "," + (r.strict ? "true" : "false") + "," +
           (r.pass ? "true" : "false") + "," + csv_cell(flags) + "\n";
  }
  return out;
}

std::string scan_csv(const SharpnessScanResult& scan) {
  std::string out = "L,min_quotient,mu_squared,gap,fitted_exponent_so_far\n";
  const double mu2 = scan.mu * scan.mu;
  for (const ScanRecord& r : scan.records) {
    out += csv_number(r.log_length) + "," + csv_number(r.quotient) + "," + csv_number(mu2) + "," +
           csv_number(r.gap) + "," + csv_number(r.fitted_decay_so_far) + "\n";
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace hardy::cli
