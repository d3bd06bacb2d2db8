#pragma once

#include <span>
#include <string>
#include <vector>

#include "hardy/group.hpp"

namespace hardy {

enum class NormFamily { p_sum, max, koranyi, euclidean };

std::string to_string(NormFamily family);

/// Homogeneous quasi-norm |x| attached to a group's dilations.
///
///   p-sum:     (sum_k |x_k|^{p/nu_k})^{1/p}
///   max:       max_k |x_k|^{1/nu_k}
///   euclidean: sqrt(sum_k x_k^2), isotropic groups only
///   koranyi:   ((x_1^2 + x_2^2)^2 + x_3^2)^{1/4}, Heisenberg group only
///
/// Every family satisfies |D_lambda x| = lambda |x| and |-x| = |x|.
class QuasiNorm {
 public:
  static QuasiNorm p_sum(GroupSpec spec, double p);
  static QuasiNorm max(GroupSpec spec);
  static QuasiNorm euclidean(GroupSpec spec);
  static QuasiNorm koranyi(GroupSpec spec);

  double operator()(PointView x) const;

  /// Returns |x| and writes the partials d|x|/dx_k into grad.
  /// On the non-smooth coordinate hyperplanes of a p-sum norm the one-sided
  /// limit is replaced by 0; those sets have measure zero.
  double value_and_gradient(PointView x, std::span<double> grad) const;

  const GroupSpec& group() const noexcept { return spec_; }
  NormFamily family() const noexcept { return family_; }
  double p() const noexcept { return p_; }

  /// True when |x| is C^infinity across the hyperplane x_k = 0 (away from 0).
  bool smooth_across_axis(std::size_t k) const;

  /// Sup of |x_k| over the closed quasi-ball of the given radius: radius^nu_k.
  double coordinate_bound(double radius, std::size_t k) const;

  std::string label() const;

  friend bool operator==(const QuasiNorm& a, const QuasiNorm& b) {
    return a.family_ == b.family_ && a.p_ == b.p_ && a.spec_ == b.spec_;
  }

 private:
  QuasiNorm(GroupSpec spec, NormFamily family, double p);

  GroupSpec spec_;
  NormFamily family_;
  double p_;
  std::vector<double> power_;  // p / nu_k for p-sum, 1 / nu_k for max
};

}  // namespace hardy
