#include "hardy/field.hpp"

#include <cmath>
#include <stdexcept>

namespace hardy {

Annulus::Annulus(double inner_radius, double outer_radius) : inner(inner_radius), outer(outer_radius) {
  if (!(inner > 0.0) || !(outer > inner) || !std::isfinite(outer)) {
    throw std::invalid_argument("Annulus: require 0 < inner < outer < infinity");
  }
}

double Annulus::log_length() const { return std::log(outer / inner); }

ScalarField::ScalarField(std::string label, std::size_t dimension, Evaluator value, GradientEvaluator gradient)
    : label_(std::move(label)), dimension_(dimension), value_(std::move(value)), gradient_(std::move(gradient)) {
  if (dimension_ == 0) throw std::invalid_argument("ScalarField: dimension must be positive");
  if (!value_ || !gradient_) throw std::invalid_argument("ScalarField: evaluators must be callable");
}

ScalarField& ScalarField::with_support(const QuasiNorm& norm, Annulus support) {
  if (norm.group().dimension() != dimension_) {
    throw std::invalid_argument("ScalarField: support norm dimension mismatch");
  }
  norm_ = norm;
  support_ = support;
  return *this;
}

ScalarField& ScalarField::with_radial_profile(const QuasiNorm& norm, RadialProfile profile) {
  with_support(norm, profile.support);
  profile_ = std::move(profile);
  return *this;
}

std::vector<Complex> ScalarField::gradient(PointView x) const {
  std::vector<Complex> g(dimension_);
  gradient_(x, g);
  return g;
}

const Annulus& ScalarField::support() const {
  if (!support_) throw std::logic_error("ScalarField '" + label_ + "' has no declared support");
  return *support_;
}

const QuasiNorm& ScalarField::support_norm() const {
  if (!norm_) throw std::logic_error("ScalarField '" + label_ + "' has no declared support norm");
  return *norm_;
}

const RadialProfile& ScalarField::profile() const {
  if (!profile_) throw std::logic_error("ScalarField '" + label_ + "' is not radial");
  return *profile_;
}

}  // namespace hardy
