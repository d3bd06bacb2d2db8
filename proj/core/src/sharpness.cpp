#include "hardy/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hardy/field_families.hpp"
#include "hardy/operators.hpp"

namespace hardy {

namespace {

// Ordinary least squares y = c0 + c1 x; returns {c0, c1}.
std::pair<double, double> linear_fit(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double slope = sxy / sxx;
  return {my - slope * mx, slope};
}

}  // namespace

void RayleighProblem::validate() const {
  if (!(log_length > 0.0) || !std::isfinite(log_length)) {
    throw std::invalid_argument("RayleighProblem: log-length L must be positive");
  }
  if (!(Q >= 3.0)) throw std::invalid_argument("RayleighProblem: Q must be at least 3");
  if (grid_size < 16) throw std::invalid_argument("RayleighProblem: grid_size must be at least 16");
  if (!std::isfinite(alpha)) throw std::invalid_argument("RayleighProblem: alpha must be finite");
}

double rayleigh_quotient(const RadialProfile& profile, double q, double alpha, const QuadratureSettings& settings) {
  const auto& p = profile;
  const double num =
      integrate_radial([&p](double r) { return std::norm(p.derivative(r)); }, p.support, q - 1.0 - 2.0 * alpha,
                       settings);
  const double den =
      integrate_radial([&p](double r) { return std::norm(p.value(r)); }, p.support, q - 3.0 - 2.0 * alpha, settings);
  if (!(den > 0.0)) throw std::invalid_argument("rayleigh_quotient: profile has zero weighted norm");
  return num / den;
}

RadialProfile log_sine_profile(double mu, double log_length) {
  if (!(log_length > 0.0)) throw std::invalid_argument("log_sine_profile: L must be positive");
  const double k = std::numbers::pi / log_length;
  const Annulus support(1.0, std::exp(log_length));
  RadialProfile p;
  p.support = support;
  p.value = [=](double r) -> Complex {
    if (!support.contains(r)) return 0.0;
    return std::sin(k * std::log(r)) * std::pow(r, -mu);
  };
  p.derivative = [=](double r) -> Complex {
    if (!support.contains(r)) return 0.0;
    const double t = std::log(r);
    return std::pow(r, -mu - 1.0) * (k * std::cos(k * t) - mu * std::sin(k * t));
  };
  return p;
}

RayleighOperator assemble_rayleigh_operator(const RayleighProblem& problem) {
  problem.validate();
  const int n = problem.grid_size;
  const std::size_t m = static_cast<std::size_t>(n - 1);
  const double h = problem.step();
  const double mu = problem.mu();
  const double mid = problem.log_length / 2.0;
  // log of the weight, centred so neither end overflows
  auto log_w = [=](double t) { return 2.0 * mu * (t - mid); };

  RayleighOperator op;
  op.t.resize(m);
  op.weight.resize(m);
  op.stiffness_diagonal.resize(m);
  op.stiffness_lower.resize(m - 1);
  op.stiffness_upper.resize(m - 1);
  op.mass.resize(m);
  op.symmetric.diagonal.resize(m);
  op.symmetric.off_diagonal.resize(m - 1);

  for (std::size_t i = 0; i < m; ++i) {
    const double t = static_cast<double>(i + 1) * h;
    const double left = t - h / 2.0;
    const double right = t + h / 2.0;
    op.t[i] = t;
    op.weight[i] = std::exp(log_w(t));
    op.mass[i] = h * op.weight[i];
    op.stiffness_diagonal[i] = (std::exp(log_w(left)) + std::exp(log_w(right))) / h;
    if (i + 1 < m) op.stiffness_upper[i] = -std::exp(log_w(right)) / h;
    if (i > 0) op.stiffness_lower[i - 1] = -std::exp(log_w(left)) / h;
    // Ratios of weights are formed from exponent differences.
    op.symmetric.diagonal[i] = (std::exp(log_w(left) - log_w(t)) + std::exp(log_w(right) - log_w(t))) / (h * h);
    if (i + 1 < m) {
      const double next = t + h;
      op.symmetric.off_diagonal[i] = -std::exp(log_w(right) - 0.5 * (log_w(t) + log_w(next))) / (h * h);
    }
  }
  double max_diag = 0.0, max_diff = 0.0;
  for (double d : op.stiffness_diagonal) max_diag = std::max(max_diag, std::abs(d));
  for (std::size_t i = 0; i + 1 < m; ++i) {
    max_diff = std::max(max_diff, std::abs(op.stiffness_lower[i] - op.stiffness_upper[i]));
  }
  op.asymmetry = max_diag > 0.0 ? max_diff / max_diag : 0.0;
  return op;
}

RayleighMinimum minimize_rayleigh(const RayleighProblem& problem) {
  const RayleighOperator op = assemble_rayleigh_operator(problem);
  const Eigenpair pair = smallest_eigenpair(op.symmetric);
  const double mid = problem.log_length / 2.0;
  const double mu = problem.mu();

  RayleighMinimum out;
  out.value = pair.value;
  out.t = op.t;
  out.method = pair.method;
  out.residual = pair.residual;
  out.iterations = pair.iterations;
  out.profile.resize(op.t.size());
  double peak = 0.0;
  for (std::size_t i = 0; i < op.t.size(); ++i) {
    out.profile[i] = pair.vector[i] * std::exp(-mu * (op.t[i] - mid));
    if (std::abs(out.profile[i]) > std::abs(peak)) peak = out.profile[i];
  }
  for (double& v : out.profile) v /= peak;
  return out;
}

double profile_exponent(const RayleighMinimum& minimum, double log_length, double half_window) {
  const double mid = log_length / 2.0;
  std::vector<double> t, y;
  for (std::size_t i = 0; i < minimum.t.size(); ++i) {
    if (std::abs(minimum.t[i] - mid) <= half_window && minimum.profile[i] > 0.0) {
      t.push_back(minimum.t[i]);
      y.push_back(std::log(minimum.profile[i]));
    }
  }
  if (t.size() < 2) throw std::invalid_argument("profile_exponent: window holds fewer than two grid points");
  return linear_fit(t, y).second;
}

SharpnessScanResult sharpness_scan(double q, double alpha, std::span<const double> log_lengths, int grid_size) {
  for (std::size_t i = 1; i < log_lengths.size(); ++i) {
    if (!(log_lengths[i] > log_lengths[i - 1])) {
      throw std::invalid_argument("sharpness_scan: L sequence must be strictly increasing");
    }
  }
  SharpnessScanResult res;
  res.Q = q;
  res.alpha = alpha;
  res.mu = sharp_mu(q, alpha);
  res.grid_size = grid_size;
  const double mu2 = res.mu * res.mu;
  res.gaps_positive = true;
  res.monotone = true;

  std::vector<double> ls, gaps, inv_l2, quotients;
  for (double l : log_lengths) {
    const RayleighProblem problem{q, alpha, l, grid_size};
    const RayleighMinimum min = minimize_rayleigh(problem);
    ScanRecord rec;
    rec.log_length = l;
    rec.quotient = min.value;
    rec.gap = min.value - mu2;
    rec.profile_exponent = profile_exponent(min, l, l / 32.0);
    rec.method = min.method;
    if (!(rec.gap > 0.0)) res.gaps_positive = false;
    if (!res.records.empty() && !(rec.quotient < res.records.back().quotient)) res.monotone = false;

    ls.push_back(l);
    gaps.push_back(rec.gap);
    inv_l2.push_back(1.0 / (l * l));
    quotients.push_back(rec.quotient);
    const bool fit_ok = ls.size() >= 2 && std::all_of(gaps.begin(), gaps.end(), [](double g) { return g > 0.0; });
    rec.fitted_decay_so_far = fit_ok ? -loglog_slope(ls, gaps) : std::numeric_limits<double>::quiet_NaN();
    res.records.push_back(rec);
  }
  const std::size_t count = res.records.size();
  res.decay_exponent = count >= 2 ? res.records.back().fitted_decay_so_far : std::numeric_limits<double>::quiet_NaN();
  res.extrapolated_limit =
      count >= 2 ? linear_fit(inv_l2, quotients).first : std::numeric_limits<double>::quiet_NaN();
  return res;
}

std::vector<ExtremizerRow> extremizer_quotients(const EvaluationContext& ctx, double alpha, double taper,
                                                std::span<const double> plateau_lengths) {
  for (std::size_t i = 1; i < plateau_lengths.size(); ++i) {
    if (!(plateau_lengths[i] > plateau_lengths[i - 1])) {
      throw std::invalid_argument("extremizer_quotients: plateau lengths must be strictly increasing");
    }
  }
  const double mu = sharp_mu(ctx.homogeneous_dimension(), alpha);
  std::vector<ExtremizerRow> rows;
  for (double l : plateau_lengths) {
    const ScalarField f = extremizer_member_centered(ctx.norm, mu, l, taper);
    const WeightedNormTriple t = weighted_norm_triple(ctx, f, alpha);
    const IdentityReport rep = ckn_report(ctx, f, t);
    rows.push_back({l, rep.ratio.value_or(0.0), t.C / t.B, t.A / t.B});
  }
  return rows;
}

}  // namespace hardy
