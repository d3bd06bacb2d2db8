#include "hardy/field_families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hardy {
namespace {

constexpr Complex kI{0.0, 1.0};

std::span<double> scratch(std::size_t n) {
  thread_local std::vector<double> buffer;
  if (buffer.size() < n) buffer.resize(n);
  return {buffer.data(), n};
}

// exp(-1/t) for t > 0, else 0.
double transition(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double transition_derivative(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }

// Smooth step from 0 (t <= 0) to 1 (t >= 1).
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = transition(t);
  const double b = transition(1.0 - t);
  return a / (a + b);
}

double smooth_step_derivative(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double a = transition(t);
  const double b = transition(1.0 - t);
  const double da = transition_derivative(t);
  const double db = transition_derivative(1.0 - t);
  const double s = a + b;
  return (da * b + a * db) / (s * s);
}

std::string num(double v) { return format_number(v); }

}  // namespace

RadialProfile bump_profile(double center, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("bump: width must be positive");
  if (!(center - width > 0.0)) throw std::invalid_argument("bump: support window touches the origin");
  RadialProfile profile;
  profile.support = Annulus(center - width, center + width);
  profile.value = [center, width](double r) -> Complex {
    const double s = (r - center) / width;
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s * s));
  };
  profile.derivative = [center, width](double r) -> Complex {
    const double s = (r - center) / width;
    if (std::abs(s) >= 1.0) return 0.0;
    const double q = 1.0 - s * s;
    return std::exp(-1.0 / q) * (-2.0 * s / (q * q)) / width;
  };
  return profile;
}

ScalarField radial_field(const QuasiNorm& norm, RadialProfile profile, std::string label) {
  const std::size_t n = norm.group().dimension();
  const Annulus support = profile.support;
  auto value = [norm, phi = profile.value, support](PointView x) -> Complex {
    const double r = norm(x);
    return support.contains(r) ? phi(r) : Complex{};
  };
  auto gradient = [norm, dphi = profile.derivative, support](PointView x, std::span<Complex> out) {
    auto g = scratch(x.size());
    const double r = norm.value_and_gradient(x, g);
    if (!support.contains(r)) {
      std::fill(out.begin(), out.end(), Complex{});
      return;
    }
    const Complex d = dphi(r);
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = d * g[k];
  };
  ScalarField field(std::move(label), n, std::move(value), std::move(gradient));
  field.with_radial_profile(norm, std::move(profile));
  return field;
}

ScalarField radial_bump(const QuasiNorm& norm, double center, double width) {
  return radial_field(norm, bump_profile(center, width), "bump(c=" + num(center) + ",w=" + num(width) + ")");
}

Phase Phase::zero(std::size_t dimension) {
  Phase phase;
  phase.value = [](PointView) { return 0.0; };
  phase.gradient = [](PointView, std::span<double> g) { std::fill(g.begin(), g.end(), 0.0); };
  phase.radial_value = [](double) { return 0.0; };
  phase.radial_derivative = [](double) { return 0.0; };
  phase.label = "0";
  (void)dimension;
  return phase;
}

Phase Phase::radial_linear(const QuasiNorm& norm, double frequency) {
  Phase phase;
  phase.value = [norm, frequency](PointView x) { return frequency * norm(x); };
  phase.gradient = [norm, frequency](PointView x, std::span<double> g) {
    norm.value_and_gradient(x, g);
    for (double& v : g) v *= frequency;
  };
  phase.radial_value = [frequency](double r) { return frequency * r; };
  phase.radial_derivative = [frequency](double) { return frequency; };
  phase.label = num(frequency) + "|x|";
  return phase;
}

Phase Phase::linear(std::vector<double> coefficients) {
  Phase phase;
  phase.value = [c = coefficients](PointView x) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += c[k] * x[k];
    return s;
  };
  phase.gradient = [c = coefficients](PointView, std::span<double> g) {
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = c[k];
  };
  std::string label = "<(";
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    if (k) label += ',';
    label += num(coefficients[k]);
  }
  phase.label = label + "),x>";
  return phase;
}

ScalarField complex_phase_wrap(const ScalarField& base, const Phase& phase) {
  auto value = [base, theta = phase.value](PointView x) -> Complex {
    const Complex b = base(x);
    if (b == Complex{}) return b;
    return b * std::exp(kI * theta(x));
  };
  auto gradient = [base, theta = phase.value, dtheta = phase.gradient](PointView x, std::span<Complex> out) {
    base.gradient(x, out);
    const Complex b = base(x);
    auto g = scratch(x.size());
    dtheta(x, g);
    const Complex rot = std::exp(kI * theta(x));
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = (out[k] + kI * b * g[k]) * rot;
  };
  ScalarField field(base.label() + "*exp(i" + phase.label + ")", base.dimension(), std::move(value),
                    std::move(gradient));
  if (base.is_radial() && phase.radial_value && phase.radial_derivative) {
    const RadialProfile& p = base.profile();
    RadialProfile wrapped;
    wrapped.support = p.support;
    wrapped.value = [phi = p.value, theta = *phase.radial_value](double r) {
      return phi(r) * std::exp(kI * theta(r));
    };
    wrapped.derivative = [phi = p.value, dphi = p.derivative, theta = *phase.radial_value,
                          dtheta = *phase.radial_derivative](double r) {
      return (dphi(r) + kI * phi(r) * dtheta(r)) * std::exp(kI * theta(r));
    };
    field.with_radial_profile(base.support_norm(), std::move(wrapped));
  } else if (base.has_support()) {
    field.with_support(base.support_norm(), base.support());
  }
  return field;
}

RadialProfile extremizer_profile(double mu, double inner, double outer, double taper) {
  const Annulus support(inner, outer);
  const double lo = std::log(inner);
  const double hi = std::log(outer);
  if (!(taper > 0.0) || !(taper < 0.5 * (hi - lo))) {
    throw std::invalid_argument("extremizer: taper must satisfy 0 < taper < ln(b/a)/2");
  }
  auto plateau = [lo, hi, taper](double u) {
    return smooth_step((u - lo) / taper) * smooth_step((hi - u) / taper);
  };
  auto plateau_derivative = [lo, hi, taper](double u) {
    const double left = (u - lo) / taper;
    const double right = (hi - u) / taper;
    return (smooth_step_derivative(left) * smooth_step(right) - smooth_step(left) * smooth_step_derivative(right)) /
           taper;
  };
  RadialProfile profile;
  profile.support = support;
  profile.value = [mu, support, plateau](double r) -> Complex {
    if (!support.contains(r)) return 0.0;
    const double u = std::log(r);
    return std::exp(-mu * u) * plateau(u);
  };
  profile.derivative = [mu, support, plateau, plateau_derivative](double r) -> Complex {
    if (!support.contains(r)) return 0.0;
    const double u = std::log(r);
    // d/dr [r^{-mu} w(ln r)] = r^{-mu-1} (w'(ln r) - mu w(ln r))
    return std::exp(-(mu + 1.0) * u) * (plateau_derivative(u) - mu * plateau(u));
  };
  return profile;
}

ScalarField extremizer_member(const QuasiNorm& norm, double mu, double inner, double outer, double taper) {
  return radial_field(norm, extremizer_profile(mu, inner, outer, taper),
                      "extremizer(mu=" + num(mu) + ",a=" + num(inner) + ",b=" + num(outer) + ",taper=" + num(taper) +
                          ")");
}

ScalarField extremizer_member_centered(const QuasiNorm& norm, double mu, double plateau_length, double taper) {
  if (!(plateau_length > 0.0)) throw std::invalid_argument("extremizer: plateau length must be positive");
  const double half = 0.5 * plateau_length + taper;
  return radial_field(norm, extremizer_profile(mu, std::exp(-half), std::exp(half), taper),
                      "extremizer(mu=" + num(mu) + ",L=" + num(plateau_length) + ",taper=" + num(taper) + ")");
}

ScalarField anisotropic_product(const QuasiNorm& norm, double center, double width) {
  const RadialProfile p = bump_profile(center, width);
  const std::size_t n = norm.group().dimension();
  const std::size_t last = n - 1;
  auto factor = [last](PointView x) { return 1.0 + 0.5 * x[0] + 0.25 * x[0] * x[last]; };
  auto value = [norm, phi = p.value, support = p.support, factor](PointView x) -> Complex {
    const double r = norm(x);
    return support.contains(r) ? phi(r) * factor(x) : Complex{};
  };
  auto gradient = [norm, phi = p.value, dphi = p.derivative, support = p.support, factor, last](
                      PointView x, std::span<Complex> out) {
    auto g = scratch(x.size());
    const double r = norm.value_and_gradient(x, g);
    if (!support.contains(r)) {
      std::fill(out.begin(), out.end(), Complex{});
      return;
    }
    const Complex f0 = phi(r);
    const Complex d = dphi(r);
    const double h = factor(x);
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = d * g[k] * h;
    out[0] += f0 * (0.5 + 0.25 * x[last]);
    out[last] += f0 * (0.25 * x[0]);
  };
  ScalarField field("product(c=" + num(center) + ",w=" + num(width) + ")", n, std::move(value), std::move(gradient));
  field.with_support(norm, p.support);
  return field;
}

ScalarField angular_product(const QuasiNorm& norm, double center, double width, std::size_t axis) {
  const std::size_t n = norm.group().dimension();
  if (axis >= n) throw std::invalid_argument("angular_product: axis out of range");
  const RadialProfile p = bump_profile(center, width);
  const double nu = norm.group().exponent(axis);
  auto value = [norm, phi = p.value, support = p.support, axis, nu](PointView x) -> Complex {
    const double r = norm(x);
    return support.contains(r) ? phi(r) * x[axis] / std::pow(r, nu) : Complex{};
  };
  auto gradient = [norm, phi = p.value, dphi = p.derivative, support = p.support, axis, nu](
                      PointView x, std::span<Complex> out) {
    auto g = scratch(x.size());
    const double r = norm.value_and_gradient(x, g);
    if (!support.contains(r)) {
      std::fill(out.begin(), out.end(), Complex{});
      return;
    }
    const double rn = std::pow(r, nu);
    const double h = x[axis] / rn;
    const Complex f0 = phi(r);
    const Complex d = dphi(r);
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double dh = (k == axis ? 1.0 / rn : 0.0) - nu * h / r * g[k];
      out[k] = d * g[k] * h + f0 * dh;
    }
  };
  ScalarField field("angular(c=" + num(center) + ",w=" + num(width) + ",k=" + std::to_string(axis + 1) + ")", n,
                    std::move(value), std::move(gradient));
  field.with_support(norm, p.support);
  return field;
}

ScalarField compose_dilation(const ScalarField& field, const GroupSpec& spec, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("compose_dilation: scale must be positive");
  if (spec.dimension() != field.dimension()) throw std::invalid_argument("compose_dilation: dimension mismatch");
  std::vector<double> factors;
  for (double v : spec.exponents()) factors.push_back(std::pow(lambda, v));
  auto value = [field, factors](PointView x) {
    auto y = scratch(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = factors[k] * x[k];
    return field(std::vector<double>(y.begin(), y.end()));
  };
  auto gradient = [field, factors](PointView x, std::span<Complex> out) {
    std::vector<double> y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = factors[k] * x[k];
    field.gradient(y, out);
    for (std::size_t k = 0; k < x.size(); ++k) out[k] *= factors[k];
  };
  ScalarField composed(field.label() + "oD(" + num(lambda) + ")", field.dimension(), std::move(value),
                       std::move(gradient));
  if (field.is_radial()) {
    const RadialProfile& p = field.profile();
    RadialProfile scaled;
    scaled.support = Annulus(p.support.inner / lambda, p.support.outer / lambda);
    scaled.value = [phi = p.value, lambda](double r) { return phi(lambda * r); };
    scaled.derivative = [dphi = p.derivative, lambda](double r) { return lambda * dphi(lambda * r); };
    composed.with_radial_profile(field.support_norm(), std::move(scaled));
  } else if (field.has_support()) {
    const Annulus& s = field.support();
    composed.with_support(field.support_norm(), Annulus(s.inner / lambda, s.outer / lambda));
  }
  return composed;
}

ScalarField divide_by_norm_power(const ScalarField& field, const QuasiNorm& norm, double alpha) {
  auto value = [field, norm, alpha](PointView x) -> Complex {
    const Complex f = field(x);
    if (f == Complex{}) return f;
    return f * std::pow(norm(x), -alpha);
  };
  auto gradient = [field, norm, alpha](PointView x, std::span<Complex> out) {
    field.gradient(x, out);
    auto g = scratch(x.size());
    const double r = norm.value_and_gradient(x, g);
    const Complex f = field(x);
    const double w = std::pow(r, -alpha);
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = out[k] * w - alpha * f * w / r * g[k];
  };
  ScalarField result(field.label() + "/|x|^" + num(alpha), field.dimension(), std::move(value), std::move(gradient));
  if (field.is_radial() && field.support_norm().label() == norm.label() &&
      field.support_norm().group() == norm.group()) {
    const RadialProfile& p = field.profile();
    RadialProfile q;
    q.support = p.support;
    q.value = [phi = p.value, alpha](double r) { return phi(r) * std::pow(r, -alpha); };
    q.derivative = [phi = p.value, dphi = p.derivative, alpha](double r) {
      return (dphi(r) - alpha * phi(r) / r) * std::pow(r, -alpha);
    };
    result.with_radial_profile(norm, std::move(q));
  } else if (field.has_support()) {
    result.with_support(field.support_norm(), field.support());
  }
  return result;
}

ScalarField monomial(std::size_t dimension, std::vector<int> powers, double coefficient) {
  if (powers.size() != dimension) throw std::invalid_argument("monomial: one power per coordinate");
  for (int p : powers) {
    if (p < 0) throw std::invalid_argument("monomial: powers must be non-negative");
  }
  auto value = [powers, coefficient](PointView x) -> Complex {
    double v = coefficient;
    for (std::size_t k = 0; k < x.size(); ++k) v *= std::pow(x[k], powers[k]);
    return v;
  };
  auto gradient = [powers, coefficient](PointView x, std::span<Complex> out) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (powers[k] == 0) {
        out[k] = 0.0;
        continue;
      }
      double v = coefficient * powers[k] * std::pow(x[k], powers[k] - 1);
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (j != k) v *= std::pow(x[j], powers[j]);
      }
      out[k] = v;
    }
  };
  std::string label = "x^(";
  for (std::size_t k = 0; k < dimension; ++k) {
    if (k) label += ',';
    label += std::to_string(powers[k]);
  }
  label += ')';
  if (coefficient != 1.0) label = num(coefficient) + "*" + label;
  return ScalarField(std::move(label), dimension, std::move(value), std::move(gradient));
}

ScalarField norm_power(const QuasiNorm& norm, double order) {
  auto value = [norm, order](PointView x) -> Complex { return std::pow(norm(x), order); };
  auto gradient = [norm, order](PointView x, std::span<Complex> out) {
    auto g = scratch(x.size());
    const double r = norm.value_and_gradient(x, g);
    const double d = order * std::pow(r, order - 1.0);
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = d * g[k];
  };
  return ScalarField("|x|^" + num(order), norm.group().dimension(), std::move(value), std::move(gradient));
}

ScalarField zero_field(std::size_t dimension) {
  return ScalarField(
      "0", dimension, [](PointView) { return Complex{}; },
      [](PointView, std::span<Complex> out) { std::fill(out.begin(), out.end(), Complex{}); });
}

GradientCheckReport gradient_selfcheck(const ScalarField& field, std::span<const Point> samples,
                                       std::span<const double> steps, double reference_step, double tolerance,
                                       double min_order) {
  GradientCheckReport report;
  report.steps.assign(steps.begin(), steps.end());
  report.tolerance = tolerance;
  report.reference_step = reference_step;
  const std::size_t n = field.dimension();

  std::vector<std::vector<Complex>> analytic;
  double gradient_scale = 0.0;
  double value_scale = 0.0;
  for (const Point& x : samples) {
    analytic.push_back(field.gradient(x));
    for (const Complex& c : analytic.back()) gradient_scale = std::max(gradient_scale, std::abs(c));
    value_scale = std::max(value_scale, std::abs(field(x)));
  }
  // Relative errors are measured against the local gradient, floored at a
  // fraction of the largest gradient seen over the sample set.
  const double floor = std::max(1e-3 * gradient_scale, std::numeric_limits<double>::min());

  auto max_error = [&](double h) {
    double worst = 0.0;
    for (std::size_t s = 0; s < samples.size(); ++s) {
      Point x = samples[s];
      double local = 0.0;
      double diff = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double x0 = x[k];
        x[k] = x0 + h;
        const Complex fp = field(x);
        x[k] = x0 - h;
        const Complex fm = field(x);
        x[k] = x0;
        const Complex fd = (fp - fm) / (2.0 * h);
        diff = std::max(diff, std::abs(fd - analytic[s][k]));
        local = std::max(local, std::abs(analytic[s][k]));
      }
      worst = std::max(worst, diff / std::max(local, floor));
    }
    return worst;
  };

  std::vector<double> fit_h, fit_e;
  for (double h : steps) {
    const double e = max_error(h);
    report.max_relative_error.push_back(e);
    // Points dominated by cancellation error carry no order information.
    const double roundoff = 1e3 * std::numeric_limits<double>::epsilon() * std::max(value_scale, 1e-300) / h / floor;
    if (e > roundoff && e > 0.0) {
      fit_h.push_back(std::log(h));
      fit_e.push_back(std::log(e));
    }
  }
  if (fit_h.size() >= 2) {
    const double mh = std::accumulate(fit_h.begin(), fit_h.end(), 0.0) / fit_h.size();
    const double me = std::accumulate(fit_e.begin(), fit_e.end(), 0.0) / fit_e.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < fit_h.size(); ++i) {
      sxy += (fit_h[i] - mh) * (fit_e[i] - me);
      sxx += (fit_h[i] - mh) * (fit_h[i] - mh);
    }
    report.observed_order = sxy / sxx;
  } else {
    report.observed_order = std::numeric_limits<double>::infinity();
  }
  report.error_at_reference = samples.empty() ? 0.0 : max_error(reference_step);
  report.pass = report.error_at_reference <= tolerance && report.observed_order >= min_order;
  return report;
}

}  // namespace hardy
