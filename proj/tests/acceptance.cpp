// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <unistd.h>

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hardy/cli/bundle.hpp"
#include "hardy/cli/commands.hpp"
#include "hardy/cli/config.hpp"
#include "hardy/error.hpp"
#include "hardy/field_families.hpp"
#include "hardy/identities.hpp"
#include "hardy/operators.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/sharpness.hpp"
#include "test_support.hpp"

using namespace hardy;
namespace fs = std::filesystem;
using hardy::testing::rel_diff;

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<double> kAlphas{-1.0, -0.3, 0.0, 0.7, 1.0};

// Collects failures for one criterion; a criterion passes when none were recorded.
class Criterion {
 public:
  explicit Criterion(std::string title) : title_(std::move(title)) {}

  void expect(bool ok, const std::string& what) {
    ++checked_;
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& text) { notes_.push_back(text); }
  bool passed() const { return failures_.empty() && checked_ > 0; }

  void print(int index) const {
    std::printf("%s [%d] %s (%d checks)\n", passed() ? "PASS" : "FAIL", index, title_.c_str(), checked_);
    for (const std::string& n : notes_) std::printf("       %s\n", n.c_str());
    const std::size_t shown = std::min<std::size_t>(failures_.size(), 12);
    for (std::size_t i = 0; i < shown; ++i) std::printf("       x %s\n", failures_[i].c_str());
    if (failures_.size() > shown) std::printf("       ... %zu more\n", failures_.size() - shown);
  }

 private:
  std::string title_;
  int checked_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

std::string describe(const IdentityReport& r) {
  return r.check_name + " " + r.inputs.group + " " + r.inputs.norm + " " + r.inputs.field + " alpha=" +
         num(r.inputs.alpha) + " route=" + r.route;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool is_radial_field(const IdentityReport& r) { return r.inputs.field.find("product") == std::string::npos; }

std::vector<const IdentityReport*> select(const cli::Bundle& b, const std::string& check) {
  std::vector<const IdentityReport*> out;
  for (const IdentityReport& r : b.reports) {
    if (r.check_name == check) out.push_back(&r);
  }
  return out;
}

// Generalized problem K v = lambda M v on the log-radius grid, assembled
// from the weak form and solved with a dense Eigen eigensolver.
double dense_rayleigh_minimum(double q, double alpha, double log_length, int grid) {
  const int n = grid - 1;
  const double h = log_length / grid;
  const double mu = sharp_mu(q, alpha);
  auto w = [&](double t) { return std::exp(2.0 * mu * (t - log_length / 2.0)); };
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double t = (i + 1) * h;
    k(i, i) = (w(t - h / 2) + w(t + h / 2)) / h;
    if (i + 1 < n) k(i, i + 1) = k(i + 1, i) = -w(t + h / 2) / h;
    m(i, i) = h * w(t);
  }
  return Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd>(k, m).eigenvalues().minCoeff();
}

struct Workspace {
  fs::path root;
  cli::Bundle verify;
  std::vector<EvaluationContext> contexts;  // one per matrix norm, S derived
};

void remainder_matrix(const Workspace& ws, Criterion& c) {
  const auto reports = select(ws.verify, "remainder_identity");
  c.expect(reports.size() == 6 * 3 * kAlphas.size(), "matrix has " + std::to_string(reports.size()) + " cells");
  double worst_radial = 0.0, worst_cartesian = 0.0;
  int radial = 0, cartesian = 0;
  for (const IdentityReport* r : reports) {
    if (r->route == "radial") {
      ++radial;
      worst_radial = std::max(worst_radial, r->relative_residual);
      c.expect(r->relative_residual <= 1e-8, describe(*r) + " rel=" + num(r->relative_residual));
    } else {
      ++cartesian;
      worst_cartesian = std::max(worst_cartesian, r->relative_residual);
      c.expect(r->route == "cartesian", describe(*r) + " has no quadrature route");
      c.expect(r->relative_residual <= 1e-4, describe(*r) + " rel=" + num(r->relative_residual));
    }
    c.expect(is_radial_field(*r) == (r->route == "radial"), describe(*r) + " took the wrong route");
  }
  c.note(std::to_string(radial) + " radial cells, worst " + num(worst_radial) + "; " + std::to_string(cartesian) +
         " cartesian cells, worst " + num(worst_cartesian));
}

void sharp_constant(Criterion& c) {
  struct Case {
    double q, alpha, mu2;
  };
  const std::vector<double> lengths{4.0, 8.0, 16.0};
  for (const Case& k : {Case{3, 0, 0.25}, Case{4, 0, 1.0}, Case{6, 1, 1.0}}) {
    const std::string tag = "(Q=" + num(k.q) + ", alpha=" + num(k.alpha) + ")";
    c.expect(std::abs(sharp_mu(k.q, k.alpha) * sharp_mu(k.q, k.alpha) - k.mu2) <= 1e-15, tag + " mu^2");
    const SharpnessScanResult scan = sharpness_scan(k.q, k.alpha, lengths);
    for (const ScanRecord& rec : scan.records) {
      const double l = rec.log_length;
      const double continuum = k.mu2 + (kPi / l) * (kPi / l);
      c.expect(std::abs(rec.quotient - continuum) <= 1e-3,
               tag + " L=" + num(l) + " quotient " + num(rec.quotient) + " vs " + num(continuum));
      c.expect(rec.gap > 0.0, tag + " L=" + num(l) + " gap not positive");

      const int grid = 640;
      const double dense = dense_rayleigh_minimum(k.q, k.alpha, l, grid);
      const double tridiagonal = minimize_rayleigh({k.q, k.alpha, l, grid}).value;
      c.expect(std::abs(dense - continuum) <= 1e-3, tag + " L=" + num(l) + " dense " + num(dense));
      c.expect(rel_diff(dense, tridiagonal) <= 1e-9, tag + " L=" + num(l) + " dense oracle disagrees");
    }
    c.expect(scan.gaps_positive, tag + " gaps");
    c.expect(std::abs(scan.decay_exponent - 2.0) <= 0.2, tag + " decay " + num(scan.decay_exponent));
    c.expect(std::abs(scan.extrapolated_limit - k.mu2) <= 1e-3, tag + " limit " + num(scan.extrapolated_limit));
    c.note(tag + ": decay " + num(scan.decay_exponent) + ", limit " + num(scan.extrapolated_limit));
  }
}

void non_attainment(const Workspace& ws, Criterion& c) {
  struct Case {
    std::size_t norm;
    double alpha;
  };
  const std::vector<double> plateaus{2.0, 4.0, 8.0, 16.0};
  for (const Case& k : {Case{5, 0.0}, Case{0, 0.0}, Case{3, 1.0}, Case{2, -0.3}}) {
    const EvaluationContext& ctx = ws.contexts[k.norm];
    const std::string tag = ctx.group().describe() + " " + ctx.norm.label() + " alpha=" + num(k.alpha);
    const std::vector<ExtremizerRow> rows = extremizer_quotients(ctx, k.alpha, 1.0, plateaus);
    c.expect(rows.size() == plateaus.size(), tag + " rows");
    std::string rho_list;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      rho_list += (i ? ", " : "") + num(rows[i].rho);
      c.expect(rows[i].rho < 1.0, tag + " rho=" + num(rows[i].rho));
      if (i == 0) continue;
      c.expect(rows[i].rho > rows[i - 1].rho, tag + " rho not increasing at plateau " + num(rows[i].plateau_length));
      c.expect(rows[i].remainder_ratio < rows[i - 1].remainder_ratio,
               tag + " C/B not decreasing at plateau " + num(rows[i].plateau_length));
    }
    c.note(tag + ": rho " + rho_list);
  }
  struct Profile {
    double q, alpha;
  };
  for (const Profile& p : {Profile{3, 0}, Profile{4, 0}, Profile{6, 1}}) {
    const RayleighMinimum m = minimize_rayleigh({p.q, p.alpha, 16.0, 8192});
    const double mu = sharp_mu(p.q, p.alpha);
    const double exponent = profile_exponent(m, 16.0, 0.5);
    c.expect(std::abs(exponent + mu) <= 0.05,
             "(Q=" + num(p.q) + ", alpha=" + num(p.alpha) + ") exponent " + num(exponent) + " vs " + num(-mu));
    c.expect(std::all_of(m.profile.begin(), m.profile.end(), [](double v) { return v > 0.0; }),
             "minimizing profile changes sign");
  }
}

void euler_homogeneity(const Workspace& ws, Criterion& c) {
  const std::vector<double> scales{0.5, 0.8, 1.25, 2.0};
  double worst = 0.0;
  for (std::size_t i = 0; i < ws.contexts.size(); ++i) {
    const QuasiNorm& norm = ws.contexts[i].norm;
    const GroupSpec& g = norm.group();
    const std::string tag = g.describe() + " " + norm.label();
    const std::vector<Point> samples = sample_annulus(norm, Annulus(0.5, 2.0), 200, 77 + i);

    // x1^a x2^b x3^c has order a nu1 + b nu2 + c nu3.
    std::vector<std::pair<ScalarField, double>> fields;
    const auto nu = g.exponents();
    fields.emplace_back(monomial(3, {1, 1, 0}, 1.5), nu[0] + nu[1]);
    fields.emplace_back(norm_power(norm, 3.0), 3.0);
    fields.emplace_back(norm_power(norm, 2.0), 2.0);
    fields.emplace_back(norm_power(norm, -1.0), -1.0);
    if (nu[0] + nu[1] + nu[2] == 3.0) fields.emplace_back(monomial(3, {2, 1, 0}), 3.0);
    if (nu[2] == 2.0) fields.emplace_back(monomial(3, {0, 0, 1}), 2.0);
    for (double alpha : {0.0, 0.7}) {
      const double mu = sharp_mu(g.homogeneous_dimension(), alpha);
      fields.emplace_back(extremizer_member_centered(norm, mu, 8.0, 1.0), -mu);
    }
    for (const auto& [f, order] : fields) {
      const HomogeneityReport r = check_homogeneity(g, f, order, samples, scales);
      worst = std::max(worst, r.max_euler_residual);
      c.expect(r.max_euler_residual <= 1e-10,
               tag + " " + f.label() + " order " + num(order) + " residual " + num(r.max_euler_residual));
      c.expect(r.pass && r.consistent, tag + " " + f.label() + " not accepted");
    }

    const ScalarField bump = radial_bump(norm, 2.0, 1.0);
    const std::vector<Point> inside = sample_annulus(norm, Annulus(1.3, 2.7), 200, 91 + i);
    const HomogeneityReport neg = check_homogeneity(g, bump, 0.0, inside, scales);
    c.expect(!neg.pass && neg.max_euler_residual >= 1e-2,
             tag + " bump residual " + num(neg.max_euler_residual) + " should be >= 1e-2");
  }
  for (const IdentityReport* r : select(ws.verify, "euler_relation")) {
    c.expect(r->pass, describe(*r) + " rel=" + num(r->relative_residual));
  }
  c.note("worst residual on homogeneous fields " + num(worst));
}

void integration_by_parts(const Workspace& ws, Criterion& c) {
  const auto reports = select(ws.verify, "ibp_identity");
  std::map<std::string, int> per_group;
  double worst = 0.0;
  for (const IdentityReport* r : reports) {
    if (!is_radial_field(*r)) continue;
    ++per_group[r->inputs.group];
    worst = std::max(worst, r->relative_residual);
    c.expect(r->route == "radial", describe(*r) + " not on the radial route");
    c.expect(r->relative_residual <= 1e-8, describe(*r) + " rel=" + num(r->relative_residual));
  }
  c.expect(per_group.size() == 3, "groups covered: " + std::to_string(per_group.size()));
  for (const auto& [group, n] : per_group) c.expect(n == 4, group + " has " + std::to_string(n) + " radial cells");
  // A faster phase on two more norms.
  for (std::size_t i : {0u, 5u}) {
    const EvaluationContext& ctx = ws.contexts[i];
    const ScalarField f = complex_phase_wrap(radial_bump(ctx.norm, 2.0, 1.0), Phase::radial_linear(ctx.norm, 2.0));
    const IdentityReport r = verify_ibp_identity(ctx, f);
    worst = std::max(worst, r.relative_residual);
    c.expect(r.relative_residual <= 1e-8, describe(r) + " rel=" + num(r.relative_residual));
  }
  c.note("worst relative residual " + num(worst));
}

void inequalities(const Workspace& ws, Criterion& c) {
  double worst_up = 0.0, worst_ckn = 0.0;
  for (const IdentityReport* r : select(ws.verify, "uncertainty")) {
    c.expect(r->ratio && *r->ratio < 1.0 && r->pass, describe(*r) + " ratio " + num(r->ratio.value_or(NAN)));
    worst_up = std::max(worst_up, r->ratio.value_or(INFINITY));
  }
  for (const IdentityReport* r : select(ws.verify, "ckn_inequality")) {
    c.expect(r->ratio && *r->ratio < 1.0 && r->pass, describe(*r) + " ratio " + num(r->ratio.value_or(NAN)));
    worst_ckn = std::max(worst_ckn, r->ratio.value_or(INFINITY));
  }
  int accepted = 0, rejected = 0;
  for (const IdentityReport* r : select(ws.verify, "alpha_one_inequality")) {
    const bool q_at_least_5 = r->inputs.group.find("(1,2,3)") != std::string::npos;
    if (q_at_least_5) {
      ++accepted;
      c.expect(r->route != "guard" && r->ratio && *r->ratio < 1.0 && r->pass,
               describe(*r) + " ratio " + num(r->ratio.value_or(NAN)));
    } else {
      ++rejected;
      c.expect(r->route == "guard" && r->has_flag("hypothesis-violation") && r->has_flag("expected-reject"),
               describe(*r) + " was not rejected by the Q >= 5 guard");
    }
  }
  c.expect(accepted == 6 && rejected == 12, "alpha=1 cells: " + std::to_string(accepted) + " accepted, " +
                                                std::to_string(rejected) + " rejected");

  // Without expect_reject the Heisenberg case must end the run with exit code 3.
  const fs::path cfg = ws.root / "heis_alpha_one.cfg";
  std::ofstream(cfg) << "[matrix]\nalphas = 0\nchecks = alpha_one_inequality\n\n"
                        "[group heis]\nnu = 1, 1, 2\nnorms = koranyi\n\n[field bump]\nfamily = bump\n";
  std::ostringstream out, err;
  const int code = cli::cmd_verify(cfg, std::nullopt, ws.root / "heis_alpha_one", out, err);
  c.expect(code == cli::exit_hypothesis, "Heisenberg alpha=1 exit code " + std::to_string(code));
  c.note("worst ratios: uncertainty " + num(worst_up) + ", weighted Hardy " + num(worst_ckn) +
         "; Heisenberg alpha=1 exit " + std::to_string(code));
}

void schwarz(const Workspace& ws, Criterion& c) {
  const EvaluationContext& ctx = ws.contexts[0];
  c.expect(schwarz_applicable(ctx.norm), "iso3 p-sum:2 should admit the Schwarz step");
  const std::vector<Point> samples = sample_annulus(ctx.norm, Annulus(1.0, 3.0), 1000, 4242);
  c.expect(samples.size() == 1000, "sample count");

  const ScalarField bump = radial_bump(ctx.norm, 2.0, 1.0);
  const ScalarField phase = complex_phase_wrap(bump, Phase::radial_linear(ctx.norm, 1.0));
  const ScalarField product = anisotropic_product(ctx.norm, 2.0, 1.0);
  const ScalarField angular = angular_product(ctx.norm, 2.0, 1.0, 0);
  struct Field {
    const ScalarField* f;
    bool radial;
  };
  for (const Field& fld : {Field{&bump, true}, Field{&phase, true}, Field{&product, false}, Field{&angular, false}}) {
    double excess = 0.0, gap = 0.0;
    for (const Point& x : samples) {
      double g2 = 0.0;
      for (const Complex& g : fld.f->gradient(x)) g2 += std::norm(g);
      const double rf = std::abs(radial_derivative(ctx.norm, *fld.f, x));
      excess = std::max(excess, rf - std::sqrt(g2));
      gap = std::max(gap, std::abs(std::sqrt(g2) - rf));
    }
    c.expect(excess <= 1e-12, fld.f->label() + " |Rf| exceeds |grad f| by " + num(excess));
    if (fld.radial) {
      c.expect(gap <= 1e-12, fld.f->label() + " radial field should give equality, gap " + num(gap));
    } else {
      c.expect(gap > 1e-3, fld.f->label() + " off-radial field should be strict, gap " + num(gap));
    }
    const IdentityReport r = verify_schwarz_step(ctx, *fld.f, 0.0, samples);
    c.expect(r.pass, describe(r));
    c.expect(r.has_flag("pointwise-equality") == fld.radial, describe(r) + " equality flag");
    c.note(fld.f->label() + ": max excess " + num(excess) + ", max gap " + num(gap));
  }
  for (const IdentityReport* r : select(ws.verify, "schwarz_step")) c.expect(r->pass, describe(*r));
  try {
    (void)verify_schwarz_step(ws.contexts[3], bump, 0.0, samples);
    c.expect(false, "anisotropic norm accepted by the Schwarz step");
  } catch (const HypothesisViolation&) {
    c.expect(true, "");
  }
}

void infrastructure(const Workspace& ws, const std::vector<fs::path>& verify_dirs,
                    const std::vector<fs::path>& sharpness_dirs, Criterion& c) {
  const auto mc = select(ws.verify, "mc_oracle");
  c.expect(mc.size() == 6 * 3 * kAlphas.size(), "MC cells: " + std::to_string(mc.size()));
  double worst_z = 0.0;
  for (const IdentityReport* r : mc) {
    // relative_residual is |mc - quad| in units of three standard errors, worst of A, B, C.
    for (const char* q : {"A", "B", "C"}) {
      const double m = r->term(std::string("mc_") + q).value_or(NAN);
      const double se = r->term(std::string("se_") + q).value_or(NAN);
      const double quad = r->term(std::string("quad_") + q).value_or(NAN);
      const double z = std::abs(m - quad) / se;
      worst_z = std::max(worst_z, z);
      c.expect(se > 0.0 && z <= 3.0, describe(*r) + " " + q + " off by " + num(z) + " SE");
    }
  }

  for (const auto& dirs : {verify_dirs, sharpness_dirs}) {
    for (const fs::directory_entry& f : fs::directory_iterator(dirs[0])) {
      const std::string name = f.path().filename().string();
      const std::string a = slurp(f.path());
      c.expect(!a.empty() && a == slurp(dirs[1] / name), name + " differs between reruns");
    }
  }

  double worst_polar = 0.0;
  for (const EvaluationContext& ctx : ws.contexts) {
    for (const ScalarField& f : {radial_bump(ctx.norm, 2.0, 1.0),
                                 complex_phase_wrap(radial_bump(ctx.norm, 1.5, 0.8), Phase::radial_linear(ctx.norm, 1.0))}) {
      const auto radial = weighted_norm_triples(ctx, f, kAlphas, Route::radial);
      const auto cartesian = weighted_norm_triples(ctx, f, kAlphas, Route::cartesian);
      for (std::size_t i = 0; i < kAlphas.size(); ++i) {
        const double d = std::max({rel_diff(radial[i].A, cartesian[i].A), rel_diff(radial[i].B, cartesian[i].B),
                                   rel_diff(radial[i].C, cartesian[i].C)});
        worst_polar = std::max(worst_polar, d);
        c.expect(d <= 1e-4, ctx.norm.label() + " on " + ctx.group().describe() + " " + f.label() +
                                " alpha=" + num(kAlphas[i]) + " polar mismatch " + num(d));
      }
    }
  }
  const double s = ws.contexts[0].sphere.value;
  c.expect(std::abs(s - 4.0 * kPi) <= 1e-4, "Euclidean S = " + num(s));
  c.note("worst MC deviation " + num(worst_z) + " SE; worst polar mismatch " + num(worst_polar) +
         "; |S - 4 pi| = " + num(std::abs(s - 4.0 * kPi)));
}

}  // namespace

int main() {
  Workspace ws;
  ws.root = fs::temp_directory_path() / ("hardy-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(ws.root);
  fs::create_directories(ws.root);

  // The bundled matrix with every check, the MC oracle included, run twice.
  std::string text = slurp(fs::path(HARDY_CONFIG_DIR) / "default.cfg");
  text.replace(text.find("samples = 1000"), 0,
               "checks = remainder_identity, alpha_zero_identity, euler_relation, ibp_identity, product_rule, "
               "ckn_inequality, uncertainty, schwarz_step, alpha_one_inequality, mc_oracle\n");
  const fs::path matrix_cfg = ws.root / "matrix.cfg";
  std::ofstream(matrix_cfg) << text;

  const std::vector<fs::path> verify_dirs{ws.root / "verify-a", ws.root / "verify-b"};
  const std::vector<fs::path> sharpness_dirs{ws.root / "sharpness-a", ws.root / "sharpness-b"};
  double matrix_seconds = 0.0;
  bool runs_ok = true;
  for (const fs::path& dir : verify_dirs) {
    std::ostringstream out, err;
    const auto start = std::chrono::steady_clock::now();
    const int code = cli::cmd_verify(matrix_cfg, std::nullopt, dir, out, err);
    if (dir == verify_dirs[0]) {
      matrix_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    runs_ok = runs_ok && code == cli::exit_ok;
    if (code != cli::exit_ok) std::fprintf(stderr, "verify exit %d\n%s%s", code, out.str().c_str(), err.str().c_str());
  }
  for (const fs::path& dir : sharpness_dirs) {
    std::ostringstream out, err;
    const int code = cli::cmd_sharpness(fs::path(HARDY_CONFIG_DIR) / "sharpness.cfg", dir, out, err);
    runs_ok = runs_ok && code == cli::exit_ok;
    if (code != cli::exit_ok) std::fprintf(stderr, "sharpness exit %d\n%s", code, err.str().c_str());
  }
  ws.verify = cli::read_bundle(verify_dirs[0] / "bundle.json");
  for (const QuasiNorm& norm : hardy::testing::matrix_norms()) ws.contexts.push_back(make_context(norm));

  std::vector<Criterion> criteria{
      Criterion("remainder identity over the verification matrix"),
      Criterion("sharp constant from the Rayleigh minimum"),
      Criterion("non-attainment along extremizer sequences"),
      Criterion("Euler characterisation of homogeneity"),
      Criterion("integration-by-parts identity"),
      Criterion("uncertainty, weighted Hardy and alpha = 1 guard"),
      Criterion("Schwarz step"),
      Criterion("MC oracle, reproducibility, polar decomposition, sphere constant"),
  };
  remainder_matrix(ws, criteria[0]);
  criteria[0].expect(matrix_seconds <= 300.0, "matrix run took " + num(matrix_seconds) + " s");
  criteria[0].note("full matrix run with all checks: " + num(matrix_seconds) + " s");
  sharp_constant(criteria[1]);
  non_attainment(ws, criteria[2]);
  euler_homogeneity(ws, criteria[3]);
  integration_by_parts(ws, criteria[4]);
  inequalities(ws, criteria[5]);
  schwarz(ws, criteria[6]);
  infrastructure(ws, verify_dirs, sharpness_dirs, criteria[7]);
  criteria[7].expect(runs_ok, "verify or sharpness runs did not exit 0");

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    criteria[i].print(static_cast<int>(i + 1));
    failed += criteria[i].passed() ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  fs::remove_all(ws.root);
  return failed == 0 ? 0 : 1;
}
