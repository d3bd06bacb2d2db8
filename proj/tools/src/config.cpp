#include "hardy/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "hardy/report.hpp"

namespace hardy::cli {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

struct Section {
  std::string kind;  // quadrature, tolerance, matrix, group, field, sharpness, output
  std::string name;  // group / field name
  int line = 0;
  std::map<std::string, Entry> entries;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (trim(s).back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& s, int line, const std::string& key) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError(line, "'" + key + "': expected a number, got '" + s + "'");
  }
  return v;
}

template <typename Int>
Int to_int(const std::string& s, int line, const std::string& key) {
  Int v{};
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError(line, "'" + key + "': expected an integer, got '" + s + "'");
  return v;
}

bool to_bool(const std::string& s, int line, const std::string& key) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(line, "'" + key + "': expected true or false, got '" + s + "'");
}

std::vector<double> to_doubles(const Entry& e, const std::string& key) {
  std::vector<double> out;
  for (const std::string& item : split(e.value, ',')) out.push_back(to_double(item, e.line, key));
  return out;
}

NormEntry parse_norm(const std::string& token, int line) {
  NormEntry n;
  const auto colon = token.find(':');
  const std::string head = trim(token.substr(0, colon));
  if (head == "p-sum") {
    if (colon == std::string::npos) throw ConfigError(line, "norm 'p-sum' needs an exponent, e.g. p-sum:2");
    n.family = NormFamily::p_sum;
    n.p = to_double(trim(token.substr(colon + 1)), line, "norms");
    return n;
  }
  if (colon != std::string::npos) throw ConfigError(line, "norm '" + head + "' takes no parameter");
  if (head == "max") {
    n.family = NormFamily::max;
  } else if (head == "euclidean") {
    n.family = NormFamily::euclidean;
  } else if (head == "koranyi") {
    n.family = NormFamily::koranyi;
  } else {
    throw ConfigError(line, "unknown norm '" + head + "' (p-sum:<p>, max, euclidean, koranyi)");
  }
  n.p = 0.0;
  return n;
}

std::string join_numbers(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_number(v[i]);
  }
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i];
  }
  return out;
}

// Applies the known keys of one section; anything left over is an error.
class KeyReader {
 public:
  explicit KeyReader(const Section& s) : s_(s) {}

  void take(const std::string& key, const std::function<void(const Entry&)>& apply) {
    const auto it = s_.entries.find(key);
    if (it == s_.entries.end()) return;
    used_.insert(key);
    apply(it->second);
  }

  void require(const std::string& key) const {
    if (!s_.entries.contains(key)) {
      throw ConfigError(s_.line, "section [" + header() + "] is missing '" + key + "'");
    }
  }

  void finish() const {
    for (const auto& [key, e] : s_.entries) {
      if (!used_.contains(key)) throw ConfigError(e.line, "unknown key '" + key + "' in [" + header() + "]");
    }
  }

 private:
  std::string header() const { return s_.name.empty() ? s_.kind : s_.kind + " " + s_.name; }
  const Section& s_;
  std::set<std::string> used_;
};

void read_quadrature(const Section& s, QuadratureSettings& q) {
  KeyReader r(s);
  r.take("panels", [&](const Entry& e) { q.panels = to_int<int>(e.value, e.line, "panels"); });
  r.take("nodes_per_panel", [&](const Entry& e) { q.nodes_per_panel = to_int<int>(e.value, e.line, "nodes_per_panel"); });
  r.take("cartesian_panels",
         [&](const Entry& e) { q.cartesian_panels = to_int<int>(e.value, e.line, "cartesian_panels"); });
  r.take("cartesian_nodes_per_panel", [&](const Entry& e) {
    q.cartesian_nodes_per_panel = to_int<int>(e.value, e.line, "cartesian_nodes_per_panel");
  });
  r.take("cartesian_grading_levels", [&](const Entry& e) {
    q.cartesian_grading_levels = to_int<int>(e.value, e.line, "cartesian_grading_levels");
  });
  r.take("cartesian_grading_ratio", [&](const Entry& e) {
    q.cartesian_grading_ratio = to_double(e.value, e.line, "cartesian_grading_ratio");
  });
  r.take("mc_samples", [&](const Entry& e) { q.mc_samples = to_int<std::int64_t>(e.value, e.line, "mc_samples"); });
  r.take("mc_seed", [&](const Entry& e) { q.mc_seed = to_int<std::uint64_t>(e.value, e.line, "mc_seed"); });
  r.take("threads", [&](const Entry& e) { q.threads = to_int<int>(e.value, e.line, "threads"); });
  r.finish();
  try {
    q.validate();
  } catch (const std::exception& ex) {
    throw ConfigError(s.line, std::string("[quadrature]: ") + ex.what());
  }
}

void read_tolerance(const Section& s, ToleranceProfile& t) {
  KeyReader r(s);
  const std::pair<const char*, double*> keys[] = {
      {"pointwise", &t.pointwise},           {"fd_min_step", &t.fd_min_step},
      {"fd_max_step", &t.fd_max_step},       {"radial", &t.radial},
      {"cartesian", &t.cartesian},           {"consistency", &t.consistency},
      {"product_rule", &t.product_rule},     {"inequality_slack", &t.inequality_slack},
      {"strict_margin", &t.strict_margin},   {"schwarz", &t.schwarz},
      {"relative_floor", &t.relative_floor}, {"exclusion_band", &t.exclusion_band}};
  for (const auto& [key, target] : keys) {
    r.take(key, [&, key = std::string(key), target = target](const Entry& e) {
      *target = to_double(e.value, e.line, key);
      if (*target < 0.0) throw ConfigError(e.line, "'" + key + "' must be non-negative");
    });
  }
  r.finish();
}

}  // namespace

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

QuasiNorm NormEntry::make(const GroupSpec& spec) const {
  switch (family) {
    case NormFamily::p_sum: return QuasiNorm::p_sum(spec, p);
    case NormFamily::max: return QuasiNorm::max(spec);
    case NormFamily::euclidean: return QuasiNorm::euclidean(spec);
    case NormFamily::koranyi: return QuasiNorm::koranyi(spec);
  }
  throw std::logic_error("unknown norm family");
}

std::string NormEntry::token() const {
  switch (family) {
    case NormFamily::p_sum: return "p-sum:" + format_number(p);
    case NormFamily::max: return "max";
    case NormFamily::euclidean: return "euclidean";
    case NormFamily::koranyi: return "koranyi";
  }
  return "?";
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{
      "remainder_identity", "alpha_zero_identity", "euler_relation", "ibp_identity",        "product_rule",
      "ckn_inequality",     "uncertainty",         "schwarz_step",   "alpha_one_inequality", "mc_oracle"};
  return names;
}

const GroupEntry& RunConfig::group(const std::string& name) const {
  for (const GroupEntry& g : groups)
    if (g.name == name) return g;
  throw ConfigError(0, "unknown group '" + name + "'");
}

bool RunConfig::check_enabled(const std::string& check) const {
  if (checks.empty()) return check != "mc_oracle";
  return std::find(checks.begin(), checks.end(), check) != checks.end();
}

RunConfig parse_config(const std::string& text) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find_first_of("#;");
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "unterminated section header");
      const std::vector<std::string> words = split(trim(line.substr(1, line.size() - 2)), ' ');
      std::vector<std::string> parts;
      for (const std::string& w : words)
        if (!w.empty()) parts.push_back(w);
      if (parts.empty()) throw ConfigError(line_no, "empty section header");
      Section s;
      s.kind = parts[0];
      s.line = line_no;
      static const std::set<std::string> plain{"quadrature", "tolerance", "matrix", "sharpness", "output"};
      if (s.kind == "group" || s.kind == "field") {
        if (parts.size() != 2) throw ConfigError(line_no, "[" + s.kind + "] needs exactly one name");
        s.name = parts[1];
      } else if (plain.contains(s.kind)) {
        if (parts.size() != 1) throw ConfigError(line_no, "[" + s.kind + "] takes no name");
      } else {
        throw ConfigError(line_no, "unknown section [" + s.kind + "]");
      }
      for (const Section& prev : sections) {
        if (prev.kind == s.kind && prev.name == s.name) {
          throw ConfigError(line_no, "duplicate section (first at line " + std::to_string(prev.line) + ")");
        }
      }
      sections.push_back(std::move(s));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "expected 'key = value'");
    if (sections.empty()) throw ConfigError(line_no, "entry before any section header");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(line_no, "missing key before '='");
    auto& entries = sections.back().entries;
    if (entries.contains(key)) {
      throw ConfigError(line_no, "duplicate key '" + key + "' (first at line " + std::to_string(entries[key].line) + ")");
    }
    entries[key] = Entry{trim(line.substr(eq + 1)), line_no};
  }

  RunConfig cfg;
  const Section* matrix = nullptr;
  for (const Section& s : sections) {
    if (s.kind == "quadrature") {
      read_quadrature(s, cfg.quadrature);
    } else if (s.kind == "tolerance") {
      read_tolerance(s, cfg.tolerance);
    } else if (s.kind == "matrix") {
      matrix = &s;
    } else if (s.kind == "group") {
      KeyReader r(s);
      r.require("nu");
      r.require("norms");
      GroupEntry g;
      g.name = s.name;
      r.take("nu", [&](const Entry& e) { g.nu = to_doubles(e, "nu"); });
      r.take("norms", [&](const Entry& e) {
        for (const std::string& tok : split(e.value, ',')) g.norms.push_back(parse_norm(tok, e.line));
        if (g.norms.empty()) throw ConfigError(e.line, "'norms' must list at least one quasi-norm");
        try {
          const GroupSpec spec(g.nu);
          for (const NormEntry& n : g.norms) (void)n.make(spec);
        } catch (const std::exception& ex) {
          throw ConfigError(e.line, ex.what());
        }
      });
      r.finish();
      cfg.groups.push_back(std::move(g));
    } else if (s.kind == "field") {
      KeyReader r(s);
      FieldEntry f;
      f.name = s.name;
      r.take("family", [&](const Entry& e) {
        static const std::set<std::string> families{"bump", "phase-bump", "product", "angular"};
        if (!families.contains(e.value)) {
          throw ConfigError(e.line, "unknown field family '" + e.value + "' (bump, phase-bump, product, angular)");
        }
        f.family = e.value;
      });
      r.take("center", [&](const Entry& e) { f.center = to_double(e.value, e.line, "center"); });
      r.take("width", [&](const Entry& e) { f.width = to_double(e.value, e.line, "width"); });
      r.take("frequency", [&](const Entry& e) { f.frequency = to_double(e.value, e.line, "frequency"); });
      r.take("axis", [&](const Entry& e) { f.axis = to_int<std::size_t>(e.value, e.line, "axis"); });
      r.finish();
      if (!(f.width > 0.0) || !(f.center - f.width > 0.0)) {
        throw ConfigError(s.line, "field '" + f.name + "': need width > 0 and center - width > 0");
      }
      cfg.fields.push_back(std::move(f));
    } else if (s.kind == "sharpness") {
      KeyReader r(s);
      r.take("cases", [&](const Entry& e) {
        for (const std::string& tok : split(e.value, ',')) {
          const auto colon = tok.find(':');
          if (colon == std::string::npos) throw ConfigError(e.line, "sharpness case must be Q:alpha, got '" + tok + "'");
          cfg.cases.push_back({to_double(trim(tok.substr(0, colon)), e.line, "cases"),
                               to_double(trim(tok.substr(colon + 1)), e.line, "cases")});
        }
      });
      r.take("L", [&](const Entry& e) { cfg.log_lengths = to_doubles(e, "L"); });
      r.take("grid", [&](const Entry& e) { cfg.grid_size = to_int<int>(e.value, e.line, "grid"); });
      r.take("extremizer_group", [&](const Entry& e) { cfg.extremizer_group = e.value; });
      r.take("extremizer_norm",
             [&](const Entry& e) { cfg.extremizer_norm = to_int<std::size_t>(e.value, e.line, "extremizer_norm"); });
      r.take("extremizer_alpha",
             [&](const Entry& e) { cfg.extremizer_alpha = to_double(e.value, e.line, "extremizer_alpha"); });
      r.take("taper", [&](const Entry& e) { cfg.taper = to_double(e.value, e.line, "taper"); });
      r.take("plateaus", [&](const Entry& e) { cfg.plateaus = to_doubles(e, "plateaus"); });
      r.finish();
    } else if (s.kind == "output") {
      KeyReader r(s);
      r.take("dir", [&](const Entry& e) { cfg.out_dir = e.value; });
      r.take("timings", [&](const Entry& e) { cfg.timings = to_bool(e.value, e.line, "timings"); });
      r.finish();
    }
  }

  for (std::size_t i = 0; i < cfg.groups.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (cfg.groups[i].name == cfg.groups[j].name) throw ConfigError(0, "duplicate group '" + cfg.groups[i].name + "'");
    }
  }
  for (const FieldEntry& f : cfg.fields) {
    for (const GroupEntry& g : cfg.groups) {
      if (f.axis >= g.nu.size()) {
        throw ConfigError(0, "field '" + f.name + "': axis " + std::to_string(f.axis) + " out of range for group '" +
                                 g.name + "'");
      }
    }
  }

  if (matrix) {
    KeyReader r(*matrix);
    r.take("alphas", [&](const Entry& e) { cfg.alphas = to_doubles(e, "alphas"); });
    r.take("checks", [&](const Entry& e) {
      cfg.checks = split(e.value, ',');
      for (const std::string& c : cfg.checks) {
        if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end()) {
          throw ConfigError(e.line, "unknown check '" + c + "'");
        }
      }
    });
    r.take("expect_reject", [&](const Entry& e) {
      for (const std::string& tok : split(e.value, ',')) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) throw ConfigError(e.line, "expect_reject entries are check:group");
        const std::string check = trim(tok.substr(0, colon));
        const std::string group = trim(tok.substr(colon + 1));
        if (std::find(known_checks().begin(), known_checks().end(), check) == known_checks().end()) {
          throw ConfigError(e.line, "unknown check '" + check + "'");
        }
        if (std::none_of(cfg.groups.begin(), cfg.groups.end(), [&](const GroupEntry& g) { return g.name == group; })) {
          throw ConfigError(e.line, "unknown group '" + group + "'");
        }
        cfg.expect_reject.insert({check, group});
      }
    });
    r.take("samples", [&](const Entry& e) { cfg.samples = to_int<std::size_t>(e.value, e.line, "samples"); });
    r.take("sample_seed",
           [&](const Entry& e) { cfg.sample_seed = to_int<std::uint64_t>(e.value, e.line, "sample_seed"); });
    r.finish();
  }

  if (!cfg.extremizer_group.empty()) {
    const GroupEntry& g = cfg.group(cfg.extremizer_group);
    if (cfg.extremizer_norm >= g.norms.size()) throw ConfigError(0, "extremizer_norm index out of range");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot read config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string RunConfig::canonical() const {
  std::map<std::string, std::map<std::string, std::string>> sections;

  for (const FieldEntry& f : fields) {
    auto& s = sections["field " + f.name];
    s["family"] = f.family;
    s["center"] = format_number(f.center);
    s["width"] = format_number(f.width);
    s["frequency"] = format_number(f.frequency);
    s["axis"] = std::to_string(f.axis);
  }
  for (const GroupEntry& g : groups) {
    auto& s = sections["group " + g.name];
    s["nu"] = join_numbers(g.nu);
    std::vector<std::string> tokens;
    for (const NormEntry& n : g.norms) tokens.push_back(n.token());
    s["norms"] = join(tokens);
  }
  {
    auto& s = sections["matrix"];
    s["alphas"] = join_numbers(alphas);
    s["checks"] = join(checks);
    std::vector<std::string> rej;
    for (const auto& [c, g] : expect_reject) rej.push_back(c + ":" + g);
    s["expect_reject"] = join(rej);
    s["samples"] = std::to_string(samples);
    s["sample_seed"] = std::to_string(sample_seed);
  }
  {
    auto& s = sections["output"];
    s["dir"] = out_dir;
    s["timings"] = timings ? "true" : "false";
  }
  {
    const QuadratureSettings& q = quadrature;
    auto& s = sections["quadrature"];
    s["panels"] = std::to_string(q.panels);
    s["nodes_per_panel"] = std::to_string(q.nodes_per_panel);
    s["cartesian_panels"] = std::to_string(q.cartesian_panels);
    s["cartesian_nodes_per_panel"] = std::to_string(q.cartesian_nodes_per_panel);
    s["cartesian_grading_levels"] = std::to_string(q.cartesian_grading_levels);
    s["cartesian_grading_ratio"] = format_number(q.cartesian_grading_ratio);
    s["mc_samples"] = std::to_string(q.mc_samples);
    s["mc_seed"] = std::to_string(q.mc_seed);
    s["threads"] = std::to_string(q.threads);
  }
  {
    auto& s = sections["sharpness"];
    std::vector<std::string> cs;
    for (const SharpnessCase& c : cases) cs.push_back(format_number(c.Q) + ":" + format_number(c.alpha));
    s["cases"] = join(cs);
    s["L"] = join_numbers(log_lengths);
    s["grid"] = std::to_string(grid_size);
    s["extremizer_group"] = extremizer_group;
    s["extremizer_norm"] = std::to_string(extremizer_norm);
    s["extremizer_alpha"] = format_number(extremizer_alpha);
    s["taper"] = format_number(taper);
    s["plateaus"] = join_numbers(plateaus);
  }
  {
    const ToleranceProfile& t = tolerance;
    auto& s = sections["tolerance"];
    s["pointwise"] = format_number(t.pointwise);
    s["fd_min_step"] = format_number(t.fd_min_step);
    s["fd_max_step"] = format_number(t.fd_max_step);
    s["radial"] = format_number(t.radial);
    s["cartesian"] = format_number(t.cartesian);
    s["consistency"] = format_number(t.consistency);
    s["product_rule"] = format_number(t.product_rule);
    s["inequality_slack"] = format_number(t.inequality_slack);
    s["strict_margin"] = format_number(t.strict_margin);
    s["schwarz"] = format_number(t.schwarz);
    s["relative_floor"] = format_number(t.relative_floor);
    s["exclusion_band"] = format_number(t.exclusion_band);
  }

  std::string out;
  for (const auto& [header, entries] : sections) {
    if (!out.empty()) out += '\n';
    out += "[" + header + "]\n";
    for (const auto& [key, value] : entries) {
      out += key;
      out += value.empty() ? " =\n" : " = " + value + "\n";
    }
  }
  return out;
}

std::string RunConfig::fingerprint() const { return hex64(fnv1a64(canonical())); }

}  // namespace hardy::cli
