#include "hardy/gauss_legendre.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace hardy {

GaussLegendreRule::GaussLegendreRule(int points) {
  if (points < 1) throw std::invalid_argument("GaussLegendreRule: need at least one point");
  const int n = points;
  nodes_.assign(n, 0.0);
  weights_.assign(n, 0.0);
  // Newton iteration on P_n from the Chebyshev-like initial guess; symmetric fill.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      } else {
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
      }
      // p1 = P_n(x), p0 = P_{n-1}(x)
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes_[i] = -x;
    nodes_[n - 1 - i] = x;
    weights_[i] = w;
    weights_[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes_[n / 2] = 0.0;
}

const GaussLegendreRule& GaussLegendreRule::get(int points) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[points];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(points);
  return *slot;
}

CompositeRule composite_rule(const std::vector<double>& breakpoints, int points_per_panel) {
  if (breakpoints.size() < 2) throw std::invalid_argument("composite_rule: need at least one panel");
  const GaussLegendreRule& rule = GaussLegendreRule::get(points_per_panel);
  CompositeRule out;
  out.nodes.reserve((breakpoints.size() - 1) * points_per_panel);
  out.weights.reserve(out.nodes.capacity());
  for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
    const double lo = breakpoints[p];
    const double hi = breakpoints[p + 1];
    if (!(hi > lo)) throw std::invalid_argument("composite_rule: breakpoints must increase");
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (int i = 0; i < rule.size(); ++i) {
      out.nodes.push_back(mid + half * rule.nodes()[i]);
      out.weights.push_back(half * rule.weights()[i]);
    }
  }
  return out;
}

double integrate_panels(const std::function<double(double)>& g, double lo, double hi, int panels, int points) {
  if (panels < 1) throw std::invalid_argument("integrate_panels: need at least one panel");
  if (hi == lo) return 0.0;
  std::vector<double> breaks(panels + 1);
  for (int p = 0; p <= panels; ++p) breaks[p] = lo + (hi - lo) * p / panels;
  breaks.back() = hi;
  const CompositeRule rule = composite_rule(breaks, points);
  CompensatedSum sum;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum.add(rule.weights[i] * g(rule.nodes[i]));
  return sum.value();
}

}  // namespace hardy
