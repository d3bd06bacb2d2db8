#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

/// Raised when a check is requested outside the hypotheses under which the
/// inequality or identity is stated (e.g. homogeneous dimension below 3).
class HypothesisViolation : public std::domain_error {
 public:
  explicit HypothesisViolation(const std::string& what) : std::domain_error(what) {}
};

/// Raised when a numerical procedure cannot deliver a trustworthy result
/// (eigensolver stagnation, inconsistent sphere-constant estimates, ...).
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hardy
