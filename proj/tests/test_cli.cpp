#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hardy/cli/bundle.hpp"
#include "hardy/cli/commands.hpp"
#include "hardy/cli/config.hpp"
#include "json.hpp"

using namespace hardy;
using namespace hardy::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigDir = HARDY_CONFIG_DIR;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hardy-test-cli-" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "run.cfg";
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

// One radial field on nu = (1,2,3): cheap, Q = 6 so every check applies.
const char* kSmallVerify = R"(
[quadrature]
panels = 32

[matrix]
alphas = -1, 0, 1
samples = 50

[group aniso]
nu = 1, 2, 3
norms = p-sum:4

[field bump]
family = bump
center = 2
width = 1
)";

const char* kHeisAlphaOne = R"(
[matrix]
alphas = 0
checks = alpha_one_inequality

[group heis]
nu = 1, 1, 2
norms = koranyi

[field bump]
family = bump
)";

int verify(const fs::path& cfg, const fs::path& out, std::string* err_text = nullptr,
           const std::optional<std::string>& only = std::nullopt) {
  std::ostringstream out_s, err_s;
  const int code = cmd_verify(cfg, only, out, out_s, err_s);
  if (err_text) *err_text = err_s.str();
  return code;
}

}  // namespace

TEST_CASE("bundled configs parse and round-trip through the canonical form") {
  for (const char* name : {"default.cfg", "sharpness.cfg"}) {
    const RunConfig cfg = load_config(kConfigDir / name);
    const std::string canonical = cfg.canonical();
    const RunConfig again = parse_config(canonical);
    CHECK(again.canonical() == canonical);
    CHECK(again.fingerprint() == cfg.fingerprint());
    CHECK(cfg.fingerprint().size() == 16);
  }
  const RunConfig def = load_config(kConfigDir / "default.cfg");
  CHECK(def.groups.size() == 3);
  CHECK(def.fields.size() == 3);
  CHECK(def.alphas.size() == 5);
  CHECK(def.expect_reject.count({"alpha_one_inequality", "heis"}) == 1);
}

TEST_CASE("comments and layout do not change the fingerprint") {
  const RunConfig a = parse_config(kSmallVerify);
  const RunConfig b = parse_config(std::string("# leading comment\n; another\n") + kSmallVerify + "\n\n");
  CHECK(a.fingerprint() == b.fingerprint());
  const RunConfig c = parse_config(std::string(kSmallVerify) + "\n[output]\ntimings = true\n");
  CHECK(a.fingerprint() != c.fingerprint());
}

TEST_CASE("config errors are anchored to a line") {
  auto line_of = [](const std::string& text) -> std::string {
    try {
      (void)parse_config(text);
    } catch (const ConfigError& e) {
      return e.what();
    }
    return "no error";
  };
  CHECK(line_of("[quadrature]\npanels = 8\nbogus = 1\n").find("line 3") != std::string::npos);
  CHECK(line_of("\n[nonsense]\n").find("line 2") != std::string::npos);
  CHECK(line_of("[quadrature]\npanels 8\n").find("line 2") != std::string::npos);
  CHECK(line_of("[quadrature]\npanels = eight\n").find("line 2") != std::string::npos);
  CHECK(line_of("[quadrature]\npanels = 8\npanels = 9\n").find("line 3") != std::string::npos);
  CHECK(line_of("[matrix]\nexpect_reject = nope:heis\n").find("line 2") != std::string::npos);
  CHECK(line_of("[group g]\nnu = 1, 1, 1\nnorms = koranyi\n").find("line") != std::string::npos);
  CHECK(line_of("[field f]\nfamily = bump\ncenter = 1\nwidth = 2\n").find("line") != std::string::npos);
  CHECK(line_of("[group g]\nnu = 1, 1\n[group g]\nnu = 1, 1\n").find("line 3") != std::string::npos);
}

TEST_CASE("output directory precedence: flag, environment, config, default") {
  RunConfig cfg;
  ::unsetenv(kOutDirVariable);
  CHECK(resolve_out_dir(std::nullopt, cfg) == fs::path("hardy-out"));
  cfg.out_dir = "from-config";
  CHECK(resolve_out_dir(std::nullopt, cfg) == fs::path("from-config"));
  ::setenv(kOutDirVariable, "from-env", 1);
  CHECK(resolve_out_dir(std::nullopt, cfg) == fs::path("from-env"));
  CHECK(resolve_out_dir(fs::path("from-flag"), cfg) == fs::path("from-flag"));
  ::setenv(kOutDirVariable, "", 1);
  CHECK(resolve_out_dir(std::nullopt, cfg) == fs::path("from-config"));
  ::unsetenv(kOutDirVariable);
}

TEST_CASE("CSV numbers") {
  CHECK(csv_number(0.1) == "0.10000000000000001");
  CHECK(csv_number(1.0) == "1");
  CHECK(csv_number(-2.5e-12) == "-2.4999999999999998e-12");
  CHECK(std::stod(csv_number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(csv_cell("plain") == "plain");
  CHECK(csv_cell("a,b") == "\"a,b\"");
  CHECK(csv_cell("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("verify: exit 0, files, bit-identical rerun, schema") {
  const fs::path dir = scratch("verify");
  const fs::path cfg = write_config(dir, kSmallVerify);
  REQUIRE(verify(cfg, dir / "a") == exit_ok);
  REQUIRE(verify(cfg, dir / "b") == exit_ok);
  const std::string bundle = slurp(dir / "a" / "bundle.json");
  CHECK(bundle == slurp(dir / "b" / "bundle.json"));
  CHECK(slurp(dir / "a" / "reports.csv") == slurp(dir / "b" / "reports.csv"));
  CHECK(bundle.find('\r') == std::string::npos);
  CHECK(bundle.back() == '\n');

  const Bundle parsed = parse_bundle(bundle);
  CHECK(dump_bundle(parsed) == bundle);
  CHECK(parsed.config_fingerprint == load_config(cfg).fingerprint());
  CHECK(parsed.reports.size() > 10);
  for (std::size_t i = 1; i < parsed.reports.size(); ++i) {
    CHECK(parsed.reports[i - 1].fingerprint <= parsed.reports[i].fingerprint);
  }
  for (const IdentityReport& r : parsed.reports) CHECK(r.pass == (r.relative_residual <= r.tolerance));

  const std::string csv = slurp(dir / "a" / "reports.csv");
  CHECK(csv.rfind("fingerprint,check_name,group,norm,field,alpha,route,lhs,rhs,residual,relative_residual,tolerance,"
                  "ratio,strict,pass,flags\n",
                  0) == 0);

  SUBCASE("schema rejects unknown, missing and mistyped keys") {
    nlohmann::json j = nlohmann::json::parse(bundle);
    nlohmann::json extra = j;
    extra["surprise"] = 1;
    CHECK_THROWS_AS(parse_bundle(extra.dump()), BundleError);
    nlohmann::json report_extra = j;
    report_extra["reports"][0]["surprise"] = true;
    CHECK_THROWS_AS(parse_bundle(report_extra.dump()), BundleError);
    nlohmann::json missing = j;
    missing.erase("timings");
    CHECK_THROWS_AS(parse_bundle(missing.dump()), BundleError);
    nlohmann::json typed = j;
    typed["reports"][0]["pass"] = "yes";
    CHECK_THROWS_AS(parse_bundle(typed.dump()), BundleError);
    CHECK_THROWS_AS(parse_bundle("{not json"), BundleError);
  }

  SUBCASE("--only restricts the checks") {
    REQUIRE(verify(cfg, dir / "only", nullptr, std::string("ibp_identity")) == exit_ok);
    for (const IdentityReport& r : read_bundle(dir / "only" / "bundle.json").reports) CHECK(r.check_name == "ibp_identity");
    CHECK(verify(cfg, dir / "only", nullptr, std::string("not_a_check")) == exit_config);
  }

  SUBCASE("report over two passing bundles") {
    std::ostringstream out, err;
    CHECK(cmd_report({dir / "a" / "bundle.json", dir / "b" / "bundle.json"}, out, err) == exit_ok);
    CHECK(out.str().find("0 failing") != std::string::npos);
  }

  SUBCASE("report lists failing fingerprints") {
    Bundle broken = parsed;
    broken.reports[3].pass = false;
    const fs::path p = dir / "broken.json";
    write_text(p, dump_bundle(broken));
    std::ostringstream out, err;
    CHECK(cmd_report({dir / "a" / "bundle.json", p}, out, err) == exit_failure);
    CHECK(out.str().find(broken.reports[3].fingerprint) != std::string::npos);
  }
}

TEST_CASE("verify: guard violations and malformed configs") {
  const fs::path dir = scratch("guards");
  std::string err;
  CHECK(verify(write_config(dir, kHeisAlphaOne), dir / "out", &err) == exit_hypothesis);
  CHECK(err.find("Q >= 5") != std::string::npos);

  std::string marked = kHeisAlphaOne;
  marked.replace(marked.find("checks"), 0, "expect_reject = alpha_one_inequality:heis\n");
  CHECK(verify(write_config(dir, marked), dir / "out") == exit_ok);
  const Bundle b = read_bundle(dir / "out" / "bundle.json");
  REQUIRE(b.reports.size() == 1);
  CHECK(b.reports[0].has_flag("expected-reject"));
  CHECK(b.reports[0].route == "guard");

  CHECK(verify(write_config(dir, "[matrix]\nalphas = 0,\n"), dir / "out", &err) == exit_config);
  CHECK(err.find("line 2") != std::string::npos);
  CHECK(verify(dir / "missing.cfg", dir / "out") == exit_config);
  CHECK(verify(write_config(dir, "[matrix]\nalphas = 0\n"), dir / "out") == exit_config);
}

TEST_CASE("sharpness command") {
  const fs::path dir = scratch("sharpness");
  const char* cfg_text = R"(
[sharpness]
cases = 3:0
L = 4, 8, 16
grid = 2048
extremizer_group = heis
plateaus = 4, 8

[group heis]
nu = 1, 1, 2
norms = koranyi
)";
  const fs::path cfg = write_config(dir, cfg_text);
  std::ostringstream out, err;
  REQUIRE(cmd_sharpness(cfg, dir / "a", out, err) == exit_ok);
  REQUIRE(cmd_sharpness(cfg, dir / "b", out, err) == exit_ok);
  for (const char* f : {"scan_Q3_alpha0.csv", "extremizer.csv", "sharpness.json"}) {
    INFO(f);
    REQUIRE(fs::exists(dir / "a" / f));
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  }

  std::istringstream csv(slurp(dir / "a" / "scan_Q3_alpha0.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "L,min_quotient,mu_squared,gap,fitted_exponent_so_far");
  int rows = 0;
  while (std::getline(csv, line)) {
    const double l = std::stod(line.substr(0, line.find(',')));
    std::vector<double> cols;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cols.push_back(cell == "nan" ? NAN : std::stod(cell));
    REQUIRE(cols.size() == 5);
    CHECK(std::abs(cols[3] - (std::numbers::pi / l) * (std::numbers::pi / l)) <= 1e-3);
    CHECK(cols[2] == 0.25);
    ++rows;
  }
  CHECK(rows == 3);

  const Bundle b = read_bundle(dir / "a" / "sharpness.json");
  CHECK(b.scans.size() == 1);
  CHECK(b.reports.size() == 2);

  CHECK(cmd_sharpness(write_config(dir, "[sharpness]\ncases = 3:0\nL =\n"), dir / "c", out, err) == exit_config);
  CHECK(cmd_sharpness(write_config(dir, "[sharpness]\ncases = 3:0\n"), dir / "c", out, err) == exit_config);
  CHECK(cmd_sharpness(write_config(dir, "[sharpness]\ncases = 3:0\nL = 8, 4\n"), dir / "c", out, err) == exit_config);
  CHECK(cmd_sharpness(write_config(dir, "[sharpness]\ncases = 2:0\nL = 4, 8\n"), dir / "c", out, err) ==
        exit_hypothesis);
}

TEST_CASE("report: empty input and unreadable bundles") {
  std::ostringstream out, err;
  CHECK(cmd_report({}, out, err) == exit_config);
  const fs::path dir = scratch("report");
  std::ofstream(dir / "junk.json") << "{\"version\": 1}";
  CHECK(cmd_report({dir / "junk.json"}, out, err) == exit_config);
  CHECK(cmd_report({dir / "absent.json"}, out, err) == exit_config);
}
