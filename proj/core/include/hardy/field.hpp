#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hardy/group.hpp"
#include "hardy/quasi_norm.hpp"

namespace hardy {

using Complex = std::complex<double>;

/// Closed quasi-norm shell inner <= |x| <= outer with 0 < inner < outer.
struct Annulus {
  double inner = 0.0;
  double outer = 0.0;

  Annulus() = default;
  Annulus(double inner_radius, double outer_radius);

  bool contains(double r) const noexcept { return r >= inner && r <= outer; }
  double log_length() const;
};

/// One-dimensional profile phi(r) with derivative, vanishing outside support.
/// Complex-valued so that radially phase-modulated fields keep the 1D route.
struct RadialProfile {
  std::function<Complex(double)> value;
  std::function<Complex(double)> derivative;
  Annulus support;
};

/// Smooth complex-valued field on R^n with analytic partial derivatives.
///
/// A field may declare a support annulus in a quasi-norm; it then vanishes,
/// together with its partials, outside that annulus. A field may also carry
/// its radial profile (f = phi(|x|)), which lets integrals reduce to 1D.
class ScalarField {
 public:
  using Evaluator = std::function<Complex(PointView)>;
  using GradientEvaluator = std::function<void(PointView, std::span<Complex>)>;

  ScalarField(std::string label, std::size_t dimension, Evaluator value, GradientEvaluator gradient);

  /// Declares the support annulus; the evaluators are expected to honour it.
  ScalarField& with_support(const QuasiNorm& norm, Annulus support);
  /// Declares f = profile(|x|) in the given norm (implies the support).
  ScalarField& with_radial_profile(const QuasiNorm& norm, RadialProfile profile);

  Complex operator()(PointView x) const { return value_(x); }
  void gradient(PointView x, std::span<Complex> out) const { gradient_(x, out); }
  std::vector<Complex> gradient(PointView x) const;

  const std::string& label() const noexcept { return label_; }
  std::size_t dimension() const noexcept { return dimension_; }

  bool has_support() const noexcept { return support_.has_value(); }
  const Annulus& support() const;
  /// Norm in which the support (and radial profile, if any) is expressed.
  const QuasiNorm& support_norm() const;

  bool is_radial() const noexcept { return profile_.has_value(); }
  const RadialProfile& profile() const;

 private:
  std::string label_;
  std::size_t dimension_;
  Evaluator value_;
  GradientEvaluator gradient_;
  std::optional<QuasiNorm> norm_;
  std::optional<Annulus> support_;
  std::optional<RadialProfile> profile_;
};

}  // namespace hardy
