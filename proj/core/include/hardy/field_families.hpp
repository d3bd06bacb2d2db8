#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hardy/field.hpp"

namespace hardy {

// Compactly supported test functions in C_0^infinity(G \ {0}).

/// phi(r) = exp(-1 / (1 - s^2)), s = (r - center) / width, for |s| < 1.
RadialProfile bump_profile(double center, double width);

/// f(x) = phi(|x|) with the canonical bump. The window must stay off the
/// origin: center - width > 0.
ScalarField radial_bump(const QuasiNorm& norm, double center, double width);

/// f(x) = phi(|x|) for an arbitrary profile.
ScalarField radial_field(const QuasiNorm& norm, RadialProfile profile, std::string label);

/// Real phase theta(x) with analytic gradient. When the phase depends on |x|
/// only, the radial form is kept so wrapped radial fields stay radial.
struct Phase {
  std::function<double(PointView)> value;
  std::function<void(PointView, std::span<double>)> gradient;
  std::optional<std::function<double(double)>> radial_value;
  std::optional<std::function<double(double)>> radial_derivative;
  std::string label;

  static Phase zero(std::size_t dimension);
  /// theta(x) = frequency * |x|
  static Phase radial_linear(const QuasiNorm& norm, double frequency);
  /// theta(x) = <coefficients, x>
  static Phase linear(std::vector<double> coefficients);
};

/// f(x) = base(x) exp(i theta(x)).
ScalarField complex_phase_wrap(const ScalarField& base, const Phase& phase);

/// phi(r) = r^{-mu} w(ln r) with w a smooth plateau: 1 on
/// [ln a + taper, ln b - taper], decaying smoothly to 0 at ln a and ln b.
RadialProfile extremizer_profile(double mu, double inner, double outer, double taper);
ScalarField extremizer_member(const QuasiNorm& norm, double mu, double inner, double outer, double taper);

/// Extremizer member whose plateau has log-length plateau_length, centred at
/// r = 1: a = exp(-plateau_length/2 - taper), b = exp(plateau_length/2 + taper).
ScalarField extremizer_member_centered(const QuasiNorm& norm, double mu, double plateau_length, double taper);

/// Non-radial field phi(|x|) (1 + x_1/2 + x_1 x_n/4) with the canonical bump.
ScalarField anisotropic_product(const QuasiNorm& norm, double center, double width);

/// phi(|x|) x_k / |x|^{nu_k}: bump times a dilation-invariant angular factor.
ScalarField angular_product(const QuasiNorm& norm, double center, double width, std::size_t axis);

/// f o D_lambda, with the support annulus scaled by 1/lambda.
ScalarField compose_dilation(const ScalarField& field, const GroupSpec& spec, double lambda);

/// f / |x|^alpha (used to differentiate along dilation rays numerically).
ScalarField divide_by_norm_power(const ScalarField& field, const QuasiNorm& norm, double alpha);

// Globally defined homogeneous fields (no compact support).

/// c * prod_k x_k^{powers_k}; homogeneous of order sum_k nu_k powers_k.
ScalarField monomial(std::size_t dimension, std::vector<int> powers, double coefficient = 1.0);
/// |x|^order, homogeneous of that order (evaluated away from 0).
ScalarField norm_power(const QuasiNorm& norm, double order);
ScalarField zero_field(std::size_t dimension);

/// Analytic partials vs central differences, per step size.
struct GradientCheckReport {
  std::vector<double> steps;
  std::vector<double> max_relative_error;  // per step
  double observed_order = 0.0;             // log-log slope over truncation-dominated steps
  double tolerance = 0.0;
  double reference_step = 0.0;
  double error_at_reference = 0.0;
  bool pass = false;
};

/// Compares analytic partials with central differences at every sample and
/// step. Passes when the error at the reference step is within tolerance and
/// the observed order is at least min_order (or the error is at round-off).
GradientCheckReport gradient_selfcheck(const ScalarField& field, std::span<const Point> samples,
                                       std::span<const double> steps, double reference_step = 1e-5,
                                       double tolerance = 1e-6, double min_order = 1.8);

}  // namespace hardy
