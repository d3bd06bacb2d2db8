#include "hardy/identities.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hardy/error.hpp"
#include "hardy/field_families.hpp"
#include "hardy/operators.hpp"

namespace hardy {

namespace {

void require_q(const EvaluationContext& ctx, double minimum, const char* check) {
  const double q = ctx.homogeneous_dimension();
  if (q < minimum) {
    std::ostringstream msg;
    msg << check << ": requires Q >= " << format_number(minimum) << ", got Q = " << format_number(q) << " for "
        << ctx.group().describe();
    throw HypothesisViolation(msg.str());
  }
}

// Values available at one tensor-grid node inside the support.
struct NodeValues {
  PointView x;
  double r = 0.0;  // |x| in the context norm
  Complex f;
  Complex ef;  // Euler operator applied to f
  std::span<const Complex> grad;
};

using NodeKernel = std::function<void(const NodeValues&, std::span<double>)>;

VectorIntegrand node_integrand(const EvaluationContext& ctx, const ScalarField& f, NodeKernel kernel) {
  return [&ctx, &f, kernel = std::move(kernel)](PointView x, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    const QuasiNorm& support_norm = f.support_norm();
    const double rs = support_norm(x);
    if (!f.support().contains(rs)) return;
    const double r = support_norm == ctx.norm ? rs : ctx.norm(x);
    if (!(r > 0.0)) return;
    thread_local std::vector<Complex> grad;
    grad.resize(x.size());
    f.gradient(x, grad);
    Complex ef = 0.0;
    const auto nu = ctx.group().exponents();
    for (std::size_t k = 0; k < x.size(); ++k) ef += nu[k] * x[k] * grad[k];
    kernel(NodeValues{x, r, f(x), ef, grad}, out);
  };
}

Box support_box(const ScalarField& f) { return bounding_box(f.support_norm(), f.support().outer); }

std::vector<double> cartesian_moments(const EvaluationContext& ctx, const ScalarField& f, std::size_t count,
                                      NodeKernel kernel) {
  if (ctx.group().dimension() > 3) {
    throw std::invalid_argument("tensor-grid route is limited to n <= 3; use a radial field");
  }
  const CartesianResult res = integrate_cartesian(node_integrand(ctx, f, std::move(kernel)), count, support_box(f),
                                                  ctx.norm, std::nullopt, ctx.quadrature);
  return res.values;
}

bool is_zero_field(const ScalarField& f) { return !f.has_support(); }

std::string route_name(Route r) { return to_string(r); }

IdentityReport base_report(const EvaluationContext& ctx, const ScalarField& f, std::string name, double alpha,
                           Route route) {
  IdentityReport rep;
  rep.check_name = std::move(name);
  rep.route = route_name(route);
  rep.inputs = make_inputs(ctx, f, alpha);
  return rep;
}

double route_tolerance(const EvaluationContext& ctx, Route route) {
  return route == Route::radial ? ctx.tolerance.radial : ctx.tolerance.cartesian;
}

// Integrals over G of radial integrands: S * int g(r) r^{Q-1+shift} dr.
struct RadialMoments {
  const EvaluationContext& ctx;
  const RadialProfile& profile;

  std::vector<double> operator()(const std::vector<RadialTerm>& terms) const {
    std::vector<double> values = integrate_radial(terms, profile.support, ctx.quadrature);
    for (double& v : values) v *= ctx.sphere.value;
    return values;
  }
};

}  // namespace

bool schwarz_applicable(const QuasiNorm& norm) {
  if (!norm.group().is_isotropic()) return false;
  return norm.family() == NormFamily::euclidean || (norm.family() == NormFamily::p_sum && norm.p() == 2.0);
}

std::string to_string(Route route) {
  switch (route) {
    case Route::automatic: return "automatic";
    case Route::radial: return "radial";
    case Route::cartesian: return "cartesian";
  }
  return "unknown";
}

EvaluationContext make_context(const QuasiNorm& norm, const QuadratureSettings& quadrature,
                               const ToleranceProfile& tolerance) {
  quadrature.validate();
  EvaluationContext ctx{norm, quadrature, tolerance, {}};
  if (norm.group().dimension() <= 3) {
    ctx.sphere = derive_sphere_constant(norm, quadrature, tolerance.cartesian);
  } else if (const auto closed = closed_form_sphere_constant(norm)) {
    ctx.sphere.value = *closed;
    ctx.sphere.method = "closed-form";
  } else {
    ctx.sphere.value = 1.0;
    ctx.sphere.method = "unnormalized";
  }
  return ctx;
}

double sharp_mu(double q, double alpha) noexcept { return (q - 2.0 - 2.0 * alpha) / 2.0; }

InputsFingerprint make_inputs(const EvaluationContext& ctx, const ScalarField& f, double alpha) {
  return InputsFingerprint{ctx.group().describe(), ctx.norm.label(), f.label(), alpha, ctx.quadrature.fingerprint(),
                           ctx.quadrature.mc_seed};
}

Route resolve_route(const EvaluationContext& ctx, const ScalarField& f, Route requested) {
  if (f.dimension() != ctx.group().dimension()) {
    throw std::invalid_argument("field dimension does not match the group");
  }
  const bool radial_ok = f.is_radial() && f.support_norm() == ctx.norm;
  switch (requested) {
    case Route::radial:
      if (!radial_ok) throw std::invalid_argument("radial route needs a field radial in the context quasi-norm");
      return Route::radial;
    case Route::cartesian:
      return Route::cartesian;
    case Route::automatic:
      break;
  }
  return radial_ok ? Route::radial : Route::cartesian;
}

std::vector<WeightedNormTriple> weighted_norm_triples(const EvaluationContext& ctx, const ScalarField& f,
                                                      std::span<const double> alphas, Route route) {
  require_q(ctx, 3.0, "weighted_norm_triple");
  const Route used = resolve_route(ctx, f, route);
  const double q = ctx.homogeneous_dimension();
  std::vector<WeightedNormTriple> out;
  out.reserve(alphas.size());
  for (double a : alphas) out.push_back({0.0, 0.0, 0.0, a, used, ctx.sphere.value});
  if (is_zero_field(f) || alphas.empty()) return out;

  if (used == Route::radial) {
    const RadialProfile& p = f.profile();
    std::vector<RadialTerm> terms;
    for (double a : alphas) {
      const double mu = sharp_mu(q, a);
      terms.push_back({[&p](double r) { return std::norm(p.derivative(r)); }, q - 1.0 - 2.0 * a});
      terms.push_back({[&p](double r) { return std::norm(p.value(r)); }, q - 3.0 - 2.0 * a});
      terms.push_back({[&p, mu](double r) { return std::norm(r * p.derivative(r) + mu * p.value(r)); },
                       q - 3.0 - 2.0 * a});
    }
    const std::vector<double> v = RadialMoments{ctx, p}(terms);
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      out[i].A = v[3 * i];
      out[i].B = v[3 * i + 1];
      out[i].C = v[3 * i + 2];
    }
    return out;
  }

  std::vector<double> a_vec(alphas.begin(), alphas.end());
  const std::vector<double> v = cartesian_moments(ctx, f, 3 * a_vec.size(), [a_vec, q](const NodeValues& n,
                                                                                      std::span<double> o) {
    const Complex rf = n.ef / n.r;
    const double f2 = std::norm(n.f);
    const double rf2 = std::norm(rf);
    const double log_r = std::log(n.r);
    for (std::size_t i = 0; i < a_vec.size(); ++i) {
      const double a = a_vec[i];
      const double w = std::exp(-2.0 * a * log_r);  // |x|^{-2a}
      const double mu = sharp_mu(q, a);
      o[3 * i] = rf2 * w;
      o[3 * i + 1] = f2 * w / (n.r * n.r);
      o[3 * i + 2] = std::norm(rf + mu * n.f / n.r) * w;
    }
  });
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    out[i].A = v[3 * i];
    out[i].B = v[3 * i + 1];
    out[i].C = v[3 * i + 2];
  }
  return out;
}

WeightedNormTriple weighted_norm_triple(const EvaluationContext& ctx, const ScalarField& f, double alpha,
                                        Route route) {
  const double a[] = {alpha};
  return weighted_norm_triples(ctx, f, a, route).front();
}

std::vector<std::array<McEstimate, 3>> mc_weighted_norm_triples(const EvaluationContext& ctx, const ScalarField& f,
                                                                std::span<const double> alphas) {
  require_q(ctx, 3.0, "mc_weighted_norm_triple");
  std::vector<std::array<McEstimate, 3>> out(alphas.size());
  if (is_zero_field(f) || alphas.empty()) return out;
  const double q = ctx.homogeneous_dimension();
  std::vector<double> a_vec(alphas.begin(), alphas.end());
  const VectorIntegrand g = node_integrand(ctx, f, [a_vec, q](const NodeValues& n, std::span<double> o) {
    const Complex rf = n.ef / n.r;
    for (std::size_t i = 0; i < a_vec.size(); ++i) {
      const double w = std::pow(n.r, -2.0 * a_vec[i]);
      const double mu = sharp_mu(q, a_vec[i]);
      o[3 * i] = std::norm(rf) * w;
      o[3 * i + 1] = std::norm(n.f) * w / (n.r * n.r);
      o[3 * i + 2] = std::norm(rf + mu * n.f / n.r) * w;
    }
  });
  const std::vector<McEstimate> est = mc_integrate(g, 3 * a_vec.size(), support_box(f), ctx.quadrature);
  for (std::size_t i = 0; i < alphas.size(); ++i) out[i] = {est[3 * i], est[3 * i + 1], est[3 * i + 2]};
  return out;
}

std::array<McEstimate, 3> mc_weighted_norm_triple(const EvaluationContext& ctx, const ScalarField& f, double alpha) {
  const double a[] = {alpha};
  return mc_weighted_norm_triples(ctx, f, a).front();
}

IdentityReport remainder_report(const EvaluationContext& ctx, const ScalarField& f, const WeightedNormTriple& t) {
  const double mu = sharp_mu(ctx.homogeneous_dimension(), t.alpha);
  IdentityReport rep = base_report(ctx, f, "remainder_identity", t.alpha, t.route);
  rep.lhs = t.A - mu * mu * t.B;
  rep.rhs = t.C;
  rep.tolerance = route_tolerance(ctx, t.route);
  rep.terms = {{"A", t.A}, {"B", t.B}, {"C", t.C}, {"mu", mu}, {"sphere_constant", t.sphere_constant}};
  if (is_zero_field(f)) rep.flags.push_back("zero-field");
  finish_identity(rep, ctx.tolerance.relative_floor);
  return rep;
}

IdentityReport verify_remainder_identity(const EvaluationContext& ctx, const ScalarField& f, double alpha,
                                         Route route) {
  return remainder_report(ctx, f, weighted_norm_triple(ctx, f, alpha, route));
}

std::vector<IdentityReport> verify_remainder_identity(const EvaluationContext& ctx, const ScalarField& f,
                                                      std::span<const double> alphas, Route route) {
  std::vector<IdentityReport> out;
  for (const WeightedNormTriple& t : weighted_norm_triples(ctx, f, alphas, route)) {
    out.push_back(remainder_report(ctx, f, t));
  }
  return out;
}

IdentityReport verify_alpha_zero_identity(const EvaluationContext& ctx, const ScalarField& f, Route route) {
  require_q(ctx, 3.0, "verify_alpha_zero_identity");
  const Route used = resolve_route(ctx, f, route);
  const double q = ctx.homogeneous_dimension();
  const double kappa = (q - 2.0) / 2.0;
  IdentityReport rep = base_report(ctx, f, "alpha_zero_identity", 0.0, used);
  rep.tolerance = route_tolerance(ctx, used);

  double rf2 = 0.0, f_over_x2 = 0.0, remainder = 0.0;
  if (is_zero_field(f)) {
    rep.flags.push_back("zero-field");
  } else if (used == Route::radial) {
    // Separate 1D integrals in r, each with its own pass over the nodes.
    const RadialProfile& p = f.profile();
    const double s = ctx.sphere.value;
    rf2 = s * integrate_radial([&p](double r) { return std::norm(p.derivative(r)); }, p.support, q - 1.0,
                               ctx.quadrature);
    f_over_x2 = s * integrate_radial([&p](double r) { return std::norm(p.value(r) / r); }, p.support, q - 1.0,
                                     ctx.quadrature);
    remainder = s * integrate_radial(
                        [&p, kappa](double r) { return std::norm(p.derivative(r) + kappa * p.value(r) / r); },
                        p.support, q - 1.0, ctx.quadrature);
  } else {
    if (ctx.group().dimension() > 3) throw std::invalid_argument("tensor-grid route is limited to n <= 3");
    const QuasiNorm& norm = ctx.norm;
    const QuasiNorm& support_norm = f.support_norm();
    const Annulus shell = f.support();
    const CartesianResult res = integrate_cartesian(
        [&](PointView x, std::span<double> o) {
          o[0] = o[1] = o[2] = 0.0;
          if (!shell.contains(support_norm(x))) return;
          const double r = norm(x);
          if (!(r > 0.0)) return;
          const Complex rf = radial_derivative(norm, f, x);
          const Complex fx = f(x);
          o[0] = std::norm(rf);
          o[1] = std::norm(fx) / (r * r);
          o[2] = std::norm(rf + kappa * fx / r);
        },
        3, support_box(f), norm, std::nullopt, ctx.quadrature);
    rf2 = res.values[0];
    f_over_x2 = res.values[1];
    remainder = res.values[2];
  }
  rep.lhs = rf2;
  rep.rhs = kappa * kappa * f_over_x2 + remainder;
  rep.terms = {{"norm_Rf2", rf2}, {"norm_f_over_x2", f_over_x2}, {"remainder", remainder}, {"kappa", kappa}};
  finish_identity(rep, ctx.tolerance.relative_floor);
  return rep;
}

IdentityReport verify_euler_relation(const EvaluationContext& ctx, const ScalarField& f, Route route) {
  require_q(ctx, 3.0, "verify_euler_relation");
  const Route used = resolve_route(ctx, f, route);
  const double q = ctx.homogeneous_dimension();
  const double half_q = q / 2.0;
  IdentityReport rep = base_report(ctx, f, "euler_relation", -1.0, used);
  rep.tolerance = route_tolerance(ctx, used);

  double ef2 = 0.0, f2 = 0.0, remainder = 0.0;
  if (is_zero_field(f)) {
    rep.flags.push_back("zero-field");
  } else if (used == Route::radial) {
    const RadialProfile& p = f.profile();
    const double s = ctx.sphere.value;
    ef2 = s * integrate_radial([&p](double r) { return std::norm(r * p.derivative(r)); }, p.support, q - 1.0,
                               ctx.quadrature);
    f2 = s * integrate_radial([&p](double r) { return std::norm(p.value(r)); }, p.support, q - 1.0, ctx.quadrature);
    remainder = s * integrate_radial(
                        [&p, half_q](double r) { return std::norm(r * p.derivative(r) + half_q * p.value(r)); },
                        p.support, q - 1.0, ctx.quadrature);
  } else {
    if (ctx.group().dimension() > 3) throw std::invalid_argument("tensor-grid route is limited to n <= 3");
    const GroupSpec& spec = ctx.group();
    const QuasiNorm& support_norm = f.support_norm();
    const Annulus shell = f.support();
    const CartesianResult res = integrate_cartesian(
        [&](PointView x, std::span<double> o) {
          o[0] = o[1] = o[2] = 0.0;
          if (!shell.contains(support_norm(x))) return;
          const Complex ef = euler_apply(spec, f, x);
          const Complex fx = f(x);
          o[0] = std::norm(ef);
          o[1] = std::norm(fx);
          o[2] = std::norm(ef + half_q * fx);
        },
        3, support_box(f), ctx.norm, std::nullopt, ctx.quadrature);
    ef2 = res.values[0];
    f2 = res.values[1];
    remainder = res.values[2];
  }
  rep.lhs = ef2;
  rep.rhs = half_q * half_q * f2 + remainder;
  rep.terms = {{"norm_Ef2", ef2}, {"norm_f2", f2}, {"remainder", remainder}};
  finish_identity(rep, ctx.tolerance.relative_floor);
  return rep;
}

IdentityReport verify_ibp_identity(const EvaluationContext& ctx, const ScalarField& f, Route route) {
  require_q(ctx, 3.0, "verify_ibp_identity");
  const Route used = resolve_route(ctx, f, route);
  const double q = ctx.homogeneous_dimension();
  IdentityReport rep = base_report(ctx, f, "ibp_identity", 0.0, used);
  rep.tolerance = route_tolerance(ctx, used);

  double lhs = 0.0, cross = 0.0;
  if (is_zero_field(f)) {
    rep.flags.push_back("zero-field");
  } else if (used == Route::radial) {
    const RadialProfile& p = f.profile();
    const std::vector<RadialTerm> terms{
        {[&p](double r) { return std::norm(p.value(r)); }, q - 3.0},
        {[&p](double r) { return (p.value(r) * std::conj(p.derivative(r))).real(); }, q - 2.0}};
    const std::vector<double> v = RadialMoments{ctx, p}(terms);
    lhs = v[0];
    cross = v[1];
  } else {
    const std::vector<double> v = cartesian_moments(ctx, f, 2, [](const NodeValues& n, std::span<double> o) {
      const Complex rf = n.ef / n.r;
      o[0] = std::norm(n.f) / (n.r * n.r);
      o[1] = (n.f / n.r * std::conj(rf)).real();
    });
    lhs = v[0];
    cross = v[1];
  }
  rep.lhs = lhs;
  rep.rhs = -2.0 / (q - 2.0) * cross;
  rep.terms = {{"re_cross", cross}};
  finish_identity(rep, ctx.tolerance.relative_floor);
  return rep;
}

IdentityReport verify_product_rule(const EvaluationContext& ctx, const ScalarField& f, double alpha,
                                   std::span<const Point> samples, double step) {
  IdentityReport rep = base_report(ctx, f, "product_rule", alpha, Route::automatic);
  rep.route = "pointwise";
  rep.tolerance = ctx.tolerance.product_rule;
  const ScalarField composite = divide_by_norm_power(f, ctx.norm, alpha);
  double worst = 0.0, scale = 0.0;
  for (const Point& x : samples) {
    const double r = ctx.norm(x);
    const Complex left = std::pow(r, -alpha) * radial_derivative(ctx.norm, f, x);
    const Complex right =
        radial_finite_difference(ctx.norm, composite, x, step * r) + alpha * f(x) * std::pow(r, -alpha - 1.0);
    const double diff = std::abs(left - right);
    if (diff >= worst) {
      worst = diff;
      rep.lhs = std::abs(left);
      rep.rhs = std::abs(right);
    }
    scale = std::max(scale, std::abs(left));
  }
  rep.residual = worst;
  // Absolute residual for fields of unit size; relative for large ones.
  rep.relative_residual = worst / std::max(1.0, scale);
  rep.pass = rep.relative_residual <= rep.tolerance;
  rep.terms = {{"samples", static_cast<double>(samples.size())}, {"step", step}, {"max_abs_residual", worst}};
  stamp_fingerprint(rep);
  return rep;
}

IdentityReport ckn_report(const EvaluationContext& ctx, const ScalarField& f, const WeightedNormTriple& t) {
  const double mu = sharp_mu(ctx.homogeneous_dimension(), t.alpha);
  IdentityReport rep = base_report(ctx, f, "ckn_inequality", t.alpha, t.route);
  rep.tolerance = ctx.tolerance.inequality_slack;
  rep.lhs = std::abs(mu) * std::sqrt(t.B);
  rep.rhs = std::sqrt(t.A);
  rep.terms = {{"A", t.A}, {"B", t.B}, {"C_over_B", t.B > 0.0 ? t.C / t.B : 0.0}, {"constant", std::abs(mu)}};
  if (std::abs(mu) <= 1e-14) rep.flags.push_back("degenerate-constant");
  if (t.A == 0.0 && t.B == 0.0) {
    rep.flags.push_back("vacuous");
  } else if (t.A == 0.0) {
    rep.flags.push_back("inconsistent-quadrature");
  }
  finish_inequality(rep, ctx.tolerance.strict_margin);
  return rep;
}

IdentityReport verify_ckn_inequality(const EvaluationContext& ctx, const ScalarField& f, double alpha, Route route) {
  return ckn_report(ctx, f, weighted_norm_triple(ctx, f, alpha, route));
}

IdentityReport verify_uncertainty(const EvaluationContext& ctx, const ScalarField& f, Route route) {
  require_q(ctx, 3.0, "verify_uncertainty");
  const Route used = resolve_route(ctx, f, route);
  const double q = ctx.homogeneous_dimension();
  IdentityReport rep = base_report(ctx, f, "uncertainty", 0.0, used);
  rep.tolerance = ctx.tolerance.inequality_slack;

  double f2 = 0.0, rf2 = 0.0, xf2 = 0.0;
  if (is_zero_field(f)) {
    rep.flags.push_back("vacuous");
  } else if (used == Route::radial) {
    const RadialProfile& p = f.profile();
    const std::vector<RadialTerm> terms{{[&p](double r) { return std::norm(p.value(r)); }, q - 1.0},
                                        {[&p](double r) { return std::norm(p.derivative(r)); }, q - 1.0},
                                        {[&p](double r) { return std::norm(p.value(r)); }, q + 1.0}};
    const std::vector<double> v = RadialMoments{ctx, p}(terms);
    f2 = v[0];
    rf2 = v[1];
    xf2 = v[2];
  } else {
    const std::vector<double> v = cartesian_moments(ctx, f, 3, [](const NodeValues& n, std::span<double> o) {
      const double m = std::norm(n.f);
      o[0] = m;
      o[1] = std::norm(n.ef / n.r);
      o[2] = m * n.r * n.r;
    });
    f2 = v[0];
    rf2 = v[1];
    xf2 = v[2];
  }
  rep.lhs = f2;
  rep.rhs = 2.0 / (q - 2.0) * std::sqrt(rf2) * std::sqrt(xf2);
  rep.terms = {{"norm_f2", f2}, {"norm_Rf2", rf2}, {"norm_xf2", xf2}};
  finish_inequality(rep, ctx.tolerance.strict_margin);
  return rep;
}

IdentityReport verify_schwarz_step(const EvaluationContext& ctx, const ScalarField& f, double alpha,
                                   std::span<const Point> samples) {
  if (!schwarz_applicable(ctx.norm)) {
    throw HypothesisViolation("verify_schwarz_step: needs nu = (1,...,1) with the Euclidean norm, got " +
                              ctx.norm.label() + " on " + ctx.group().describe());
  }
  IdentityReport rep = base_report(ctx, f, "schwarz_step", alpha, Route::cartesian);
  rep.tolerance = ctx.tolerance.schwarz;

  double excess = 0.0, max_gap = 0.0, max_grad = 0.0;
  std::vector<Complex> grad(ctx.group().dimension());
  for (const Point& x : samples) {
    f.gradient(x, grad);
    double g2 = 0.0;
    for (const Complex& g : grad) g2 += std::norm(g);
    const double grad_norm = std::sqrt(g2);
    const double rf = std::abs(radial_derivative(ctx.norm, f, x));
    excess = std::max(excess, rf - grad_norm);
    max_gap = std::max(max_gap, std::abs(grad_norm - rf));
    max_grad = std::max(max_grad, grad_norm);
  }
  if (!samples.empty() && max_gap <= ctx.tolerance.schwarz * std::max(1.0, max_grad)) {
    rep.flags.push_back("pointwise-equality");
  }

  double weighted_rf = 0.0, weighted_grad = 0.0;
  if (!is_zero_field(f) && ctx.group().dimension() <= 3) {
    const std::vector<double> v = cartesian_moments(ctx, f, 2, [alpha](const NodeValues& n, std::span<double> o) {
      const double w = std::pow(n.r, -2.0 * alpha);
      double g2 = 0.0;
      for (const Complex& g : n.grad) g2 += std::norm(g);
      o[0] = std::norm(n.ef / n.r) * w;
      o[1] = g2 * w;
    });
    weighted_rf = v[0];
    weighted_grad = v[1];
  } else if (is_zero_field(f)) {
    rep.flags.push_back("vacuous");
  } else {
    rep.flags.push_back("integrated-skipped");
  }
  rep.lhs = std::sqrt(weighted_rf);
  rep.rhs = std::sqrt(weighted_grad);
  rep.terms = {{"max_pointwise_excess", std::max(0.0, excess)},
               {"max_pointwise_gap", max_gap},
               {"samples", static_cast<double>(samples.size())}};
  finish_inequality(rep, ctx.tolerance.strict_margin);
  // One threshold covers both the pointwise and the integrated statement.
  rep.relative_residual = std::max(rep.relative_residual, std::max(0.0, excess));
  rep.pass = rep.relative_residual <= rep.tolerance;
  stamp_fingerprint(rep);
  return rep;
}

IdentityReport verify_alpha_one_inequality(const EvaluationContext& ctx, const ScalarField& f, Route route) {
  require_q(ctx, 5.0, "verify_alpha_one_inequality");
  const WeightedNormTriple t = weighted_norm_triple(ctx, f, 1.0, route);
  const double q = ctx.homogeneous_dimension();
  const double constant = 2.0 / (q - 4.0);
  IdentityReport rep = base_report(ctx, f, "alpha_one_inequality", 1.0, t.route);
  rep.tolerance = ctx.tolerance.inequality_slack;
  rep.lhs = std::sqrt(t.B);
  rep.rhs = constant * std::sqrt(t.A);
  rep.terms = {{"A", t.A}, {"B", t.B}, {"constant", constant}};
  if (t.A == 0.0 && t.B == 0.0) rep.flags.push_back("vacuous");
  finish_inequality(rep, ctx.tolerance.strict_margin);
  return rep;
}

double extremal_equation_residual(const EvaluationContext& ctx, const ScalarField& f, double alpha,
                                  std::span<const Point> samples) {
  const double mu = sharp_mu(ctx.homogeneous_dimension(), alpha);
  double worst = 0.0;
  for (const Point& x : samples) {
    const double r = ctx.norm(x);
    const Complex a = std::pow(r, -alpha) * radial_derivative(ctx.norm, f, x);
    const Complex b = mu * f(x) * std::pow(r, -alpha - 1.0);
    const double scale = std::max({std::abs(a), std::abs(b), ctx.tolerance.relative_floor});
    worst = std::max(worst, std::abs(a + b) / scale);
  }
  return worst;
}

}  // namespace hardy
