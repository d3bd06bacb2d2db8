#include "hardy/quadrature.hpp"

#include "hardy/error.hpp"
#include "hardy/field_families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hardy {

void QuadratureSettings::validate() const {
  if (panels < 1 || nodes_per_panel < 1 || cartesian_panels < 1 || cartesian_nodes_per_panel < 1 || mc_samples < 1) {
    throw std::invalid_argument("QuadratureSettings: all counts must be at least 1");
  }
  if (cartesian_grading_levels < 0 || !(cartesian_grading_ratio > 0.0 && cartesian_grading_ratio < 1.0)) {
    throw std::invalid_argument("QuadratureSettings: grading requires levels >= 0 and ratio in (0, 1)");
  }
  if (threads < 0) throw std::invalid_argument("QuadratureSettings: threads must be non-negative");
}

std::string QuadratureSettings::fingerprint() const {
  std::ostringstream out;
  out << "panels=" << panels << ";nodes=" << nodes_per_panel << ";cart_panels=" << cartesian_panels
      << ";cart_nodes=" << cartesian_nodes_per_panel << ";grading=" << cartesian_grading_levels << '@'
      << format_number(cartesian_grading_ratio) << ";mc=" << mc_samples;
  return out.str();
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t k = 0; k < lower.size(); ++k) v *= upper[k] - lower[k];
  return v;
}

Box bounding_box(const QuasiNorm& norm, double radius) {
  Box box;
  for (std::size_t k = 0; k < norm.group().dimension(); ++k) {
    const double b = norm.coordinate_bound(radius, k);
    box.lower.push_back(-b);
    box.upper.push_back(b);
  }
  return box;
}

bool box_covers(const Box& box, const QuasiNorm& norm, const Annulus& support) {
  if (box.dimension() != norm.group().dimension()) return false;
  for (std::size_t k = 0; k < box.dimension(); ++k) {
    const double b = norm.coordinate_bound(support.outer, k);
    if (box.lower[k] > -b || box.upper[k] < b) return false;
  }
  return true;
}

double integrate_radial(const std::function<double(double)>& g, double lo, double hi, double weight_exponent,
                        const QuadratureSettings& settings) {
  settings.validate();
  if (!(hi > lo) || lo < 0.0 || !std::isfinite(hi)) {
    throw std::invalid_argument("integrate_radial: require 0 <= lo < hi < infinity");
  }
  if (lo == 0.0) {
    if (weight_exponent < 0.0) {
      throw std::invalid_argument("integrate_radial: support touches 0 with a negative weight exponent (unbounded)");
    }
    return integrate_panels([&](double r) { return g(r) * std::pow(r, weight_exponent); }, 0.0, hi, settings.panels,
                            settings.nodes_per_panel);
  }
  const double shift = weight_exponent + 1.0;
  return integrate_panels([&](double t) { return g(std::exp(t)) * std::exp(shift * t); }, std::log(lo), std::log(hi),
                          settings.panels, settings.nodes_per_panel);
}

double integrate_radial(const std::function<double(double)>& g, const Annulus& support, double weight_exponent,
                        const QuadratureSettings& settings) {
  return integrate_radial(g, support.inner, support.outer, weight_exponent, settings);
}

std::vector<double> integrate_radial(std::span<const RadialTerm> terms, const Annulus& support,
                                     const QuadratureSettings& settings) {
  settings.validate();
  const double lo = std::log(support.inner);
  const double hi = std::log(support.outer);
  std::vector<double> breaks(settings.panels + 1);
  for (int p = 0; p <= settings.panels; ++p) breaks[p] = lo + (hi - lo) * p / settings.panels;
  breaks.back() = hi;
  const CompositeRule rule = composite_rule(breaks, settings.nodes_per_panel);
  std::vector<CompensatedSum> sums(terms.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    const double r = std::exp(t);
    for (std::size_t j = 0; j < terms.size(); ++j) {
      sums[j].add(rule.weights[i] * terms[j].g(r) * std::exp((terms[j].weight_exponent + 1.0) * t));
    }
  }
  std::vector<double> out;
  for (const auto& s : sums) out.push_back(s.value());
  return out;
}

CompositeRule cartesian_axis_rule(const Box& box, const QuasiNorm& norm, std::size_t axis,
                                  const QuadratureSettings& settings) {
  const double lo = box.lower.at(axis);
  const double hi = box.upper.at(axis);
  if (!(hi > lo)) throw std::invalid_argument("integrate_cartesian: empty box");
  const int panels = settings.cartesian_panels + settings.cartesian_panels % 2;
  std::vector<double> breaks;
  for (int p = 0; p <= panels; ++p) breaks.push_back(lo + (hi - lo) * p / panels);
  breaks.back() = hi;
  for (double& b : breaks) {
    if (std::abs(b) < 1e-12 * (hi - lo)) b = 0.0;
  }
  if (lo < 0.0 && hi > 0.0) {
    if (std::none_of(breaks.begin(), breaks.end(), [](double b) { return b == 0.0; })) {
      breaks.push_back(0.0);
      std::sort(breaks.begin(), breaks.end());
    }
    if (!norm.smooth_across_axis(axis)) {
      const auto zero = std::find(breaks.begin(), breaks.end(), 0.0);
      const double left = *(zero - 1);
      const double right = *(zero + 1);
      std::vector<double> extra;
      double scale = settings.cartesian_grading_ratio;
      for (int level = 0; level < settings.cartesian_grading_levels; ++level) {
        extra.push_back(left * scale);
        extra.push_back(right * scale);
        scale *= settings.cartesian_grading_ratio;
      }
      breaks.insert(breaks.end(), extra.begin(), extra.end());
      std::sort(breaks.begin(), breaks.end());
    }
  }
  return composite_rule(breaks, settings.cartesian_nodes_per_panel);
}

CartesianResult integrate_cartesian(const VectorIntegrand& integrand, std::size_t count, const Box& box,
                                    const QuasiNorm& norm, const std::optional<Annulus>& support,
                                    const QuadratureSettings& settings) {
  settings.validate();
  const std::size_t n = box.dimension();
  if (n == 0 || n != norm.group().dimension()) throw std::invalid_argument("integrate_cartesian: dimension mismatch");
  if (n > 3) throw std::invalid_argument("integrate_cartesian: tensor grids are limited to n <= 3");

  CartesianResult result;
  result.covers_support = !support || box_covers(box, norm, *support);

  std::vector<CompositeRule> axes;
  for (std::size_t k = 0; k < n; ++k) axes.push_back(cartesian_axis_rule(box, norm, k, settings));
  result.nodes = 1;
  for (const auto& a : axes) result.nodes *= a.nodes.size();

  const std::size_t slabs = axes[0].nodes.size();
  std::vector<std::vector<double>> slab_sums(slabs, std::vector<double>(count, 0.0));

  auto run_slab = [&](std::size_t i) {
    std::vector<CompensatedSum> sums(count);
    std::vector<double> values(count);
    double x[3] = {axes[0].nodes[i], 0.0, 0.0};
    const double w0 = axes[0].weights[i];
    auto visit = [&](double weight) {
      integrand(PointView(x, n), values);
      for (std::size_t c = 0; c < count; ++c) sums[c].add(weight * values[c]);
    };
    if (n == 1) {
      visit(w0);
    } else if (n == 2) {
      for (std::size_t j = 0; j < axes[1].nodes.size(); ++j) {
        x[1] = axes[1].nodes[j];
        visit(w0 * axes[1].weights[j]);
      }
    } else {
      for (std::size_t j = 0; j < axes[1].nodes.size(); ++j) {
        x[1] = axes[1].nodes[j];
        const double w01 = w0 * axes[1].weights[j];
        for (std::size_t k = 0; k < axes[2].nodes.size(); ++k) {
          x[2] = axes[2].nodes[k];
          visit(w01 * axes[2].weights[k]);
        }
      }
    }
    for (std::size_t c = 0; c < count; ++c) slab_sums[i][c] = sums[c].value();
  };

  unsigned workers = settings.threads > 0 ? static_cast<unsigned>(settings.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, slabs));
  if (workers <= 1) {
    for (std::size_t i = 0; i < slabs; ++i) run_slab(i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < slabs; i += workers) run_slab(i);
      });
    }
  }

  result.values.assign(count, 0.0);
  for (std::size_t c = 0; c < count; ++c) {
    CompensatedSum total;
    for (std::size_t i = 0; i < slabs; ++i) total.add(slab_sums[i][c]);
    result.values[c] = total.value();
  }
  return result;
}

double integrate_cartesian(const std::function<double(PointView)>& integrand, const Box& box, const QuasiNorm& norm,
                           const QuadratureSettings& settings) {
  return integrate_cartesian([&](PointView x, std::span<double> out) { out[0] = integrand(x); }, 1, box, norm,
                             std::nullopt, settings)
      .values[0];
}

std::vector<McEstimate> mc_integrate(const VectorIntegrand& integrand, std::size_t count, const Box& box,
                                     const QuadratureSettings& settings) {
  settings.validate();
  if (settings.mc_samples < 10'000) throw std::invalid_argument("mc_integrate: need at least 1e4 samples");
  const std::size_t n = box.dimension();
  std::mt19937_64 engine(settings.mc_seed);
  std::vector<CompensatedSum> sum(count), sum_sq(count);
  std::vector<double> values(count);
  Point x(n);
  for (std::int64_t s = 0; s < settings.mc_samples; ++s) {
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = box.lower[k] + (box.upper[k] - box.lower[k]) * unit_interval(engine());
    }
    integrand(x, values);
    for (std::size_t c = 0; c < count; ++c) {
      sum[c].add(values[c]);
      sum_sq[c].add(values[c] * values[c]);
    }
  }
  const double samples = static_cast<double>(settings.mc_samples);
  const double volume = box.volume();
  std::vector<McEstimate> out(count);
  for (std::size_t c = 0; c < count; ++c) {
    const double mean = sum[c].value() / samples;
    const double var = std::max(0.0, (sum_sq[c].value() - samples * mean * mean) / (samples - 1.0));
    out[c].value = volume * mean;
    out[c].standard_error = volume * std::sqrt(var / samples);
  }
  return out;
}

McEstimate mc_integrate(const std::function<double(PointView)>& integrand, const Box& box,
                        const QuadratureSettings& settings) {
  return mc_integrate([&](PointView x, std::span<double> out) { out[0] = integrand(x); }, 1, box, settings)[0];
}

std::optional<double> closed_form_sphere_constant(const QuasiNorm& norm) {
  const bool euclidean_type = norm.family() == NormFamily::euclidean ||
                              (norm.family() == NormFamily::p_sum && norm.p() == 2.0 && norm.group().is_isotropic());
  if (!euclidean_type) return std::nullopt;
  const double n = static_cast<double>(norm.group().dimension());
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

SphereMeasureConstant derive_sphere_constant(const QuasiNorm& norm, const QuadratureSettings& settings,
                                             double max_discrepancy) {
  if (norm.group().dimension() > 3) {
    throw std::invalid_argument("derive_sphere_constant: Cartesian side is limited to n <= 3");
  }
  const RadialProfile a = bump_profile(2.0, 1.0);
  const RadialProfile b = bump_profile(1.2, 0.6);
  const double q = norm.group().homogeneous_dimension();
  const Box box = bounding_box(norm, std::max(a.support.outer, b.support.outer));

  const CartesianResult cart = integrate_cartesian(
      [&](PointView x, std::span<double> out) {
        const double r = norm(x);
        out[0] = a.support.contains(r) ? a.value(r).real() : 0.0;
        out[1] = b.support.contains(r) ? b.value(r).real() : 0.0;
      },
      2, box, norm, std::nullopt, settings);
  const double radial_a = integrate_radial([&](double r) { return a.value(r).real(); }, a.support, q - 1.0, settings);
  const double radial_b = integrate_radial([&](double r) { return b.value(r).real(); }, b.support, q - 1.0, settings);

  SphereMeasureConstant s;
  s.method = "two-bump";
  s.reference_a = "bump(c=2,w=1)";
  s.reference_b = "bump(c=1.2,w=0.6)";
  s.cartesian_a = cart.values[0];
  s.cartesian_b = cart.values[1];
  s.radial_a = radial_a;
  s.radial_b = radial_b;
  s.value = cart.values[0] / radial_a;
  s.estimate_b = cart.values[1] / radial_b;
  s.discrepancy = std::abs(s.value - s.estimate_b) / s.value;
  if (!(s.value > 0.0) || s.discrepancy > max_discrepancy) {
    std::ostringstream msg;
    msg << "derive_sphere_constant: reference bumps disagree for " << norm.label() << " on "
        << norm.group().describe() << " (S_a=" << format_number(s.value) << ", S_b=" << format_number(s.estimate_b)
        << ", relative discrepancy " << format_number(s.discrepancy) << ")";
    throw NumericalFailure(msg.str());
  }
  return s;
}

std::vector<Point> sample_annulus(const QuasiNorm& norm, const Annulus& shell, std::size_t count, std::uint64_t seed,
                                  double exclusion_band) {
  const GroupSpec& spec = norm.group();
  const std::size_t n = spec.dimension();
  std::mt19937_64 engine(seed);
  std::vector<Point> out;
  out.reserve(count);
  Point y(n);
  while (out.size() < count) {
    for (std::size_t k = 0; k < n; ++k) y[k] = 2.0 * unit_interval(engine()) - 1.0;
    const double ry = norm(y);
    if (!(ry > 0.0)) continue;
    bool inside_band = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (std::abs(y[k]) < exclusion_band * std::pow(ry, spec.exponent(k))) inside_band = true;
    }
    if (inside_band) continue;
    const double r = shell.inner + (shell.outer - shell.inner) * unit_interval(engine());
    out.push_back(dilate(spec, r / ry, y));
  }
  return out;
}

}  // namespace hardy
