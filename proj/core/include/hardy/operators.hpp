#pragma once

#include <span>
#include <vector>

#include "hardy/field.hpp"
#include "hardy/tolerance.hpp"

namespace hardy {

/// Euler operator E f(x) = sum_k nu_k x_k d_k f(x), the generator of the
/// dilation flow lambda -> f(D_lambda x) at lambda = 1.
Complex euler_apply(const GroupSpec& spec, const ScalarField& f, PointView x);

/// Radial derivative R f(x) = E f(x) / |x|. Throws at x = 0.
Complex radial_derivative(const QuasiNorm& norm, const ScalarField& f, PointView x);

/// Central difference of lambda -> f(D_lambda x) at lambda = 1, step h.
Complex euler_finite_difference(const GroupSpec& spec, const ScalarField& f, PointView x, double h);

/// Central difference of r -> f(D_r y) at r = |x|, y = D_{1/|x|} x, step h.
Complex radial_finite_difference(const QuasiNorm& norm, const ScalarField& f, PointView x, double h);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

struct HomogeneityReport {
  double order = 0.0;
  double max_euler_residual = 0.0;    // max |E f - order f| / max(1, |f|)
  double max_scaling_residual = 0.0;  // max |f(D_r x) - r^order f(x)| / max(1, |f|, r^order |f|)
  double tolerance = 0.0;
  bool euler_pass = false;
  bool scaling_pass = false;
  bool pass = false;
  /// Both characterisations agree (both pass or both fail).
  bool consistent = false;
  std::size_t evaluations = 0;
};

/// Checks E f = order * f and f(D_r x) = r^order f(x) on a grid of samples
/// and scales. Samples must be non-zero.
HomogeneityReport check_homogeneity(const GroupSpec& spec, const ScalarField& f, double order,
                                    std::span<const Point> samples, std::span<const double> scales,
                                    const ToleranceProfile& tolerance = {});

}  // namespace hardy
