#include "hardy/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hardy/error.hpp"
#include "hardy/field_families.hpp"
#include "hardy/identities.hpp"

#ifndef HARDY_VERSION
#define HARDY_VERSION "0.0.0"
#endif

namespace hardy::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ScalarField build_field(const FieldEntry& e, const QuasiNorm& norm) {
  if (e.family == "bump") return radial_bump(norm, e.center, e.width);
  if (e.family == "phase-bump") {
    return complex_phase_wrap(radial_bump(norm, e.center, e.width), Phase::radial_linear(norm, e.frequency));
  }
  if (e.family == "product") return anisotropic_product(norm, e.center, e.width);
  if (e.family == "angular") return angular_product(norm, e.center, e.width, e.axis);
  throw ConfigError(0, "unknown field family '" + e.family + "'");
}

IdentityReport guard_report(const std::string& check, const InputsFingerprint& inputs, const std::string& flag,
                            bool pass) {
  IdentityReport r;
  r.check_name = check;
  r.route = "guard";
  r.inputs = inputs;
  r.flags = {flag};
  r.pass = pass;
  stamp_fingerprint(r);
  return r;
}

IdentityReport mc_report(const EvaluationContext& ctx, const ScalarField& f, const WeightedNormTriple& t,
                         const std::array<McEstimate, 3>& mc) {
  const double quad[3] = {t.A, t.B, t.C};
  const char* names[3] = {"A", "B", "C"};
  IdentityReport r;
  r.check_name = "mc_oracle";
  r.route = to_string(t.route);
  r.inputs = make_inputs(ctx, f, t.alpha);
  r.tolerance = 1.0;  // in units of three standard errors
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double z = std::abs(mc[k].value - quad[k]) / std::max(3.0 * mc[k].standard_error, 1e-300);
    if (z >= worst) {
      worst = z;
      r.lhs = mc[k].value;
      r.rhs = quad[k];
    }
    r.terms.emplace_back(std::string("mc_") + names[k], mc[k].value);
    r.terms.emplace_back(std::string("se_") + names[k], mc[k].standard_error);
    r.terms.emplace_back(std::string("quad_") + names[k], quad[k]);
  }
  r.residual = std::abs(r.lhs - r.rhs);
  r.relative_residual = worst;
  r.pass = r.relative_residual <= r.tolerance;
  stamp_fingerprint(r);
  return r;
}

// Runs one check; hypothesis guards and numerical failures become reports.
class CellRunner {
 public:
  CellRunner(const RunConfig& cfg, const std::optional<std::string>& only, VerifyOutcome& outcome)
      : cfg_(cfg), only_(only), outcome_(outcome) {}

  bool enabled(const std::string& check) const {
    if (only_) return *only_ == check;
    return cfg_.check_enabled(check);
  }

  void run(const std::string& check, const std::string& group_name, const InputsFingerprint& inputs,
           const std::function<void(std::vector<IdentityReport>&)>& body) {
    if (!enabled(check)) return;
    try {
      body(outcome_.reports);
    } catch (const HypothesisViolation& e) {
      const bool expected = cfg_.expect_reject.contains({check, group_name});
      IdentityReport r = guard_report(check, inputs, "hypothesis-violation", expected);
      if (expected) {
        r.flags.push_back("expected-reject");
      } else {
        outcome_.unexpected_rejections.push_back(check + " on group '" + group_name + "': " + e.what());
      }
      outcome_.reports.push_back(std::move(r));
    } catch (const NumericalFailure&) {
      outcome_.reports.push_back(guard_report(check, inputs, "numerical-failure", false));
    } catch (const std::invalid_argument&) {
      outcome_.reports.push_back(guard_report(check, inputs, "invalid-input", false));
    }
  }

 private:
  const RunConfig& cfg_;
  const std::optional<std::string>& only_;
  VerifyOutcome& outcome_;
};

}  // namespace

std::string tool_version() { return HARDY_VERSION; }

std::filesystem::path resolve_out_dir(const std::optional<std::filesystem::path>& flag, const RunConfig& config) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kOutDirVariable); env != nullptr && *env != '\0') return env;
  if (!config.out_dir.empty()) return config.out_dir;
  return "hardy-out";
}

VerifyOutcome run_verify(const RunConfig& cfg, const std::optional<std::string>& only) {
  if (only && std::find(known_checks().begin(), known_checks().end(), *only) == known_checks().end()) {
    throw ConfigError(0, "--only: unknown check '" + *only + "'");
  }
  if (cfg.groups.empty()) throw ConfigError(0, "no [group ...] sections");
  if (cfg.fields.empty()) throw ConfigError(0, "no [field ...] sections");

  const auto start = Clock::now();
  VerifyOutcome outcome;
  CellRunner runner(cfg, only, outcome);

  for (const GroupEntry& g : cfg.groups) {
    const GroupSpec spec(g.nu);
    for (const NormEntry& ne : g.norms) {
      const QuasiNorm norm = ne.make(spec);
      std::optional<EvaluationContext> ctx;
      InputsFingerprint cell_inputs{spec.describe(), norm.label(), "-", 0.0, cfg.quadrature.fingerprint(),
                                    cfg.quadrature.mc_seed};
      try {
        ctx = make_context(norm, cfg.quadrature, cfg.tolerance);
      } catch (const NumericalFailure&) {
        IdentityReport r = guard_report("sphere_constant", cell_inputs, "numerical-failure", false);
        outcome.reports.push_back(std::move(r));
        continue;
      }

      for (const FieldEntry& fe : cfg.fields) {
        const ScalarField f = build_field(fe, norm);
        const InputsFingerprint inputs = make_inputs(*ctx, f, 0.0);
        const std::vector<Point> samples =
            sample_annulus(norm, f.support(), cfg.samples, cfg.sample_seed, cfg.tolerance.exclusion_band);

        // One pass over the nodes serves every alpha of the three triple-based checks.
        std::optional<std::vector<WeightedNormTriple>> triples;
        auto get_triples = [&]() -> const std::vector<WeightedNormTriple>& {
          if (!triples) triples = weighted_norm_triples(*ctx, f, cfg.alphas);
          return *triples;
        };
        runner.run("remainder_identity", g.name, inputs, [&](auto& out) {
          for (const WeightedNormTriple& t : get_triples()) out.push_back(remainder_report(*ctx, f, t));
        });
        runner.run("ckn_inequality", g.name, inputs, [&](auto& out) {
          for (const WeightedNormTriple& t : get_triples()) out.push_back(ckn_report(*ctx, f, t));
        });
        runner.run("mc_oracle", g.name, inputs, [&](auto& out) {
          const auto mc = mc_weighted_norm_triples(*ctx, f, cfg.alphas);
          for (std::size_t i = 0; i < mc.size(); ++i) out.push_back(mc_report(*ctx, f, get_triples()[i], mc[i]));
        });
        runner.run("alpha_zero_identity", g.name, inputs,
                   [&](auto& out) { out.push_back(verify_alpha_zero_identity(*ctx, f)); });
        runner.run("euler_relation", g.name, inputs, [&](auto& out) { out.push_back(verify_euler_relation(*ctx, f)); });
        runner.run("ibp_identity", g.name, inputs, [&](auto& out) { out.push_back(verify_ibp_identity(*ctx, f)); });
        runner.run("uncertainty", g.name, inputs, [&](auto& out) { out.push_back(verify_uncertainty(*ctx, f)); });
        for (double a : cfg.alphas) {
          runner.run("product_rule", g.name, make_inputs(*ctx, f, a),
                     [&](auto& out) { out.push_back(verify_product_rule(*ctx, f, a, samples)); });
        }
        if (schwarz_applicable(norm)) {
          for (double a : cfg.alphas) {
            runner.run("schwarz_step", g.name, make_inputs(*ctx, f, a),
                       [&](auto& out) { out.push_back(verify_schwarz_step(*ctx, f, a, samples)); });
          }
        }
        runner.run("alpha_one_inequality", g.name, make_inputs(*ctx, f, 1.0),
                   [&](auto& out) { out.push_back(verify_alpha_one_inequality(*ctx, f)); });
      }
    }
  }
  sort_reports(outcome.reports);
  outcome.seconds = seconds_since(start);
  return outcome;
}

SharpnessOutcome run_sharpness(const RunConfig& cfg) {
  if (cfg.cases.empty()) throw ConfigError(0, "[sharpness] needs at least one case (cases = Q:alpha, ...)");
  if (cfg.log_lengths.empty()) throw ConfigError(0, "[sharpness] L sequence is empty");
  for (std::size_t i = 1; i < cfg.log_lengths.size(); ++i) {
    if (!(cfg.log_lengths[i] > cfg.log_lengths[i - 1])) throw ConfigError(0, "[sharpness] L must be increasing");
  }
  for (double l : cfg.log_lengths) {
    if (!(l > 0.0)) throw ConfigError(0, "[sharpness] L values must be positive");
  }
  if (cfg.grid_size < 16) throw ConfigError(0, "[sharpness] grid must be at least 16");

  const auto start = Clock::now();
  SharpnessOutcome outcome;
  for (const SharpnessCase& c : cfg.cases) {
    if (c.Q < 3.0) {
      throw HypothesisViolation("sharpness case Q = " + format_number(c.Q) + " violates Q >= 3");
    }
    SharpnessScanResult scan = sharpness_scan(c.Q, c.alpha, cfg.log_lengths, cfg.grid_size);
    const double mu2 = scan.mu * scan.mu;
    const std::string tag = "Q=" + format_number(c.Q) + ", alpha=" + format_number(c.alpha);
    if (!scan.gaps_positive) outcome.failures.push_back(tag + ": non-positive gap");
    if (!scan.monotone) outcome.failures.push_back(tag + ": quotient not decreasing in L");
    for (const ScanRecord& r : scan.records) {
      if (r.quotient < mu2 - 1e-9) outcome.failures.push_back(tag + ": quotient below mu^2");
    }
    outcome.scans.push_back(std::move(scan));
  }

  if (!cfg.extremizer_group.empty() && !cfg.plateaus.empty()) {
    const GroupEntry& g = cfg.group(cfg.extremizer_group);
    const GroupSpec spec(g.nu);
    const QuasiNorm norm = g.norms.at(cfg.extremizer_norm).make(spec);
    const EvaluationContext ctx = make_context(norm, cfg.quadrature, cfg.tolerance);
    const double mu = sharp_mu(ctx.homogeneous_dimension(), cfg.extremizer_alpha);
    for (double l : cfg.plateaus) {
      const ScalarField f = extremizer_member_centered(norm, mu, l, cfg.taper);
      IdentityReport rep = ckn_report(ctx, f, weighted_norm_triple(ctx, f, cfg.extremizer_alpha));
      rep.terms.emplace_back("plateau_length", l);
      stamp_fingerprint(rep);
      if (!rep.pass || !rep.strict) outcome.failures.push_back("extremizer L=" + format_number(l) + ": ratio not < 1");
      outcome.extremizer_reports.push_back(std::move(rep));
    }
    const auto& reps = outcome.extremizer_reports;
    for (std::size_t i = 1; i < reps.size(); ++i) {
      if (!(*reps[i].ratio > *reps[i - 1].ratio)) outcome.failures.push_back("extremizer ratios not increasing");
      if (!(*reps[i].term("C_over_B") < *reps[i - 1].term("C_over_B"))) {
        outcome.failures.push_back("extremizer remainder C/B not decreasing");
      }
    }
  }
  outcome.seconds = seconds_since(start);
  return outcome;
}

int cmd_verify(const std::filesystem::path& config_path, const std::optional<std::string>& only,
               const std::optional<std::filesystem::path>& out_dir, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  VerifyOutcome outcome;
  try {
    cfg = load_config(config_path);
    outcome = run_verify(cfg, only);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  }

  Bundle bundle;
  bundle.version = tool_version();
  bundle.config_fingerprint = cfg.fingerprint();
  bundle.reports = outcome.reports;
  if (cfg.timings) bundle.timings["verify_seconds"] = outcome.seconds;

  const std::filesystem::path dir = resolve_out_dir(out_dir, cfg);
  try {
    write_text(dir / "bundle.json", dump_bundle(bundle));
    write_text(dir / "reports.csv", reports_csv(bundle.reports));
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << "\n";
    return exit_failure;
  }

  std::size_t failed = 0;
  for (const IdentityReport& r : bundle.reports) {
    if (!r.pass) ++failed;
  }
  out << "verify: " << bundle.reports.size() << " reports, " << failed << " failed -> " << (dir / "bundle.json").string()
      << "\n";
  for (const IdentityReport& r : bundle.reports) {
    if (!r.pass) {
      out << "  FAIL " << r.check_name << " " << r.inputs.group << " " << r.inputs.norm << " " << r.inputs.field
          << " alpha=" << format_number(r.inputs.alpha) << " rel=" << format_number(r.relative_residual) << " ["
          << r.fingerprint << "]\n";
    }
  }
  for (const std::string& msg : outcome.unexpected_rejections) err << "hypothesis violation: " << msg << "\n";
  if (!outcome.unexpected_rejections.empty()) return exit_hypothesis;
  return failed == 0 ? exit_ok : exit_failure;
}

int cmd_sharpness(const std::filesystem::path& config_path, const std::optional<std::filesystem::path>& out_dir,
                  std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  SharpnessOutcome outcome;
  try {
    cfg = load_config(config_path);
    outcome = run_sharpness(cfg);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const HypothesisViolation& e) {
    err << "hypothesis violation: " << e.what() << "\n";
    return exit_hypothesis;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return exit_failure;
  }

  Bundle bundle;
  bundle.version = tool_version();
  bundle.config_fingerprint = cfg.fingerprint();
  bundle.scans = outcome.scans;
  bundle.reports = outcome.extremizer_reports;
  sort_reports(bundle.reports);
  if (cfg.timings) bundle.timings["sharpness_seconds"] = outcome.seconds;

  const std::filesystem::path dir = resolve_out_dir(out_dir, cfg);
  try {
    for (const SharpnessScanResult& s : outcome.scans) {
      const std::string name = "scan_Q" + format_number(s.Q) + "_alpha" + format_number(s.alpha) + ".csv";
      write_text(dir / name, scan_csv(s));
      out << "sharpness: Q=" << format_number(s.Q) << " alpha=" << format_number(s.alpha)
          << " mu^2=" << format_number(s.mu * s.mu) << " decay=" << csv_number(s.decay_exponent)
          << " limit=" << csv_number(s.extrapolated_limit) << " -> " << (dir / name).string() << "\n";
    }
    if (!outcome.extremizer_reports.empty()) {
      std::string table = "plateau_length,rho,remainder_ratio,quotient\n";
      for (const IdentityReport& r : outcome.extremizer_reports) {
        const double a = r.term("A").value_or(0.0);
        const double b = r.term("B").value_or(1.0);
        table += csv_number(r.term("plateau_length").value_or(0.0)) + "," + csv_number(r.ratio.value_or(0.0)) + "," +
                 csv_number(r.term("C_over_B").value_or(0.0)) + "," + csv_number(a / b) + "\n";
      }
      write_text(dir / "extremizer.csv", table);
    }
    write_text(dir / "sharpness.json", dump_bundle(bundle));
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << "\n";
    return exit_failure;
  }
  for (const std::string& f : outcome.failures) out << "  FAIL " << f << "\n";
  return outcome.failures.empty() ? exit_ok : exit_failure;
}

int cmd_report(const std::vector<std::filesystem::path>& paths, std::ostream& out, std::ostream& err) {
  if (paths.empty()) {
    err << "report: no bundles given\n";
    return exit_config;
  }
  std::vector<Bundle> bundles;
  for (const auto& p : paths) {
    try {
      bundles.push_back(read_bundle(p));
    } catch (const BundleError& e) {
      err << "report: unreadable bundle: " << e.what() << "\n";
      return exit_config;
    }
  }

  auto row = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d,
                 const std::string& e, const std::string& f, const std::string& g, const std::string& h) {
    out << std::left << std::setw(22) << a << std::setw(14) << b << std::setw(14) << c << std::setw(30) << d
        << std::setw(7) << e << std::setw(13) << f << std::setw(13) << g << h << "\n";
  };
  row("check", "group", "norm", "field", "alpha", "rel.resid", "ratio", "status");

  std::vector<std::string> failing;
  std::size_t total = 0;
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    for (const IdentityReport& r : bundles[i].reports) {
      ++total;
      std::ostringstream rel, ratio;
      rel << std::setprecision(3) << std::scientific << r.relative_residual;
      if (r.ratio) ratio << std::setprecision(6) << std::fixed << *r.ratio;
      row(r.check_name, r.inputs.group, r.inputs.norm, r.inputs.field, format_number(r.inputs.alpha), rel.str(),
          ratio.str(), r.pass ? "PASS" : "FAIL");
      if (!r.pass) failing.push_back(paths[i].string() + ": " + r.fingerprint + " (" + r.check_name + ")");
    }
    for (const SharpnessScanResult& s : bundles[i].scans) {
      const bool ok = s.gaps_positive && s.monotone;
      out << "scan Q=" << format_number(s.Q) << " alpha=" << format_number(s.alpha)
          << " mu^2=" << format_number(s.mu * s.mu) << " decay=" << csv_number(s.decay_exponent)
          << " limit=" << csv_number(s.extrapolated_limit) << " " << (ok ? "PASS" : "FAIL") << "\n";
      if (!ok) {
        failing.push_back(paths[i].string() + ": scan Q=" + format_number(s.Q) + " alpha=" + format_number(s.alpha));
      }
    }
  }
  out << total << " reports from " << bundles.size() << " bundle(s), " << failing.size() << " failing\n";
  if (!failing.empty()) {
    out << "failing:\n";
    for (const std::string& f : failing) out << "  " << f << "\n";
    return exit_failure;
  }
  return exit_ok;
}

}  // namespace hardy::cli
