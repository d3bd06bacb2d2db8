#include "hardy/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hardy {

Complex euler_apply(const GroupSpec& spec, const ScalarField& f, PointView x) {
  if (x.size() != spec.dimension() || f.dimension() != spec.dimension()) {
    throw std::invalid_argument("euler_apply: dimension mismatch");
  }
  thread_local std::vector<Complex> grad;
  grad.resize(x.size());
  f.gradient(x, grad);
  const auto nu = spec.exponents();
  Complex e{};
  for (std::size_t k = 0; k < x.size(); ++k) e += nu[k] * x[k] * grad[k];
  return e;
}

Complex radial_derivative(const QuasiNorm& norm, const ScalarField& f, PointView x) {
  const double r = norm(x);
  if (!(r > 0.0)) throw std::invalid_argument("radial_derivative: undefined at the origin");
  return euler_apply(norm.group(), f, x) / r;
}

Complex euler_finite_difference(const GroupSpec& spec, const ScalarField& f, PointView x, double h) {
  if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("euler_finite_difference: step must lie in (0, 1)");
  const Point up = dilate(spec, 1.0 + h, x);
  const Point down = dilate(spec, 1.0 - h, x);
  return (f(up) - f(down)) / (2.0 * h);
}

Complex radial_finite_difference(const QuasiNorm& norm, const ScalarField& f, PointView x, double h) {
  const double r = norm(x);
  if (!(r > 0.0)) throw std::invalid_argument("radial_finite_difference: undefined at the origin");
  if (!(h > 0.0 && h < r)) throw std::invalid_argument("radial_finite_difference: step must lie in (0, |x|)");
  const Point y = dilate(norm.group(), 1.0 / r, x);
  const Point up = dilate(norm.group(), r + h, y);
  const Point down = dilate(norm.group(), r - h, y);
  return (f(up) - f(down)) / (2.0 * h);
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need two or more points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("loglog_slope: values must be positive");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

HomogeneityReport check_homogeneity(const GroupSpec& spec, const ScalarField& f, double order,
                                    std::span<const Point> samples, std::span<const double> scales,
                                    const ToleranceProfile& tolerance) {
  HomogeneityReport report;
  report.order = order;
  report.tolerance = tolerance.pointwise;
  for (const Point& x : samples) {
    if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) {
      throw std::invalid_argument("check_homogeneity: samples must be non-zero");
    }
    const Complex fx = f(x);
    const Complex ex = euler_apply(spec, f, x);
    report.max_euler_residual =
        std::max(report.max_euler_residual, std::abs(ex - order * fx) / std::max(1.0, std::abs(fx)));
    for (double r : scales) {
      const Complex scaled = f(dilate(spec, r, x));
      const Complex expected = std::pow(r, order) * fx;
      const double mag = std::max({1.0, std::abs(fx), std::abs(expected)});
      report.max_scaling_residual = std::max(report.max_scaling_residual, std::abs(scaled - expected) / mag);
      ++report.evaluations;
    }
  }
  report.euler_pass = report.max_euler_residual <= tolerance.pointwise;
  report.scaling_pass = report.max_scaling_residual <= tolerance.pointwise;
  report.pass = report.euler_pass && report.scaling_pass;
  report.consistent = report.euler_pass == report.scaling_pass;
  return report;
}

}  // namespace hardy
