#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace hardy {

/// n-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree
/// up to 2n - 1. Nodes are ascending.
class GaussLegendreRule {
 public:
  explicit GaussLegendreRule(int points);

  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  /// Cached rule; safe to call concurrently.
  static const GaussLegendreRule& get(int points);

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Composite rule: nodes and weights for consecutive panels given by their
/// breakpoints (strictly increasing).
struct CompositeRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

CompositeRule composite_rule(const std::vector<double>& breakpoints, int points_per_panel);

/// Composite Gauss-Legendre on [lo, hi] with uniform panels.
double integrate_panels(const std::function<double(double)>& g, double lo, double hi, int panels, int points);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace hardy
