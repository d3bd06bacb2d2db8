#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hardy {

using Point = std::vector<double>;
using PointView = std::span<const double>;

/// Dilation structure of a homogeneous group in exponential coordinates.
///
/// D_lambda(x) = (lambda^nu_1 x_1, ..., lambda^nu_n x_n). Haar measure is
/// Lebesgue measure on R^n, so |D_lambda(S)| = lambda^Q |S| with
/// Q = nu_1 + ... + nu_n.
class GroupSpec {
 public:
  explicit GroupSpec(std::vector<double> exponents);

  static GroupSpec isotropic(std::size_t n);
  /// Heisenberg group H^1: n = 3, nu = (1, 1, 2).
  static GroupSpec heisenberg();

  std::size_t dimension() const noexcept { return nu_.size(); }
  std::span<const double> exponents() const noexcept { return nu_; }
  double exponent(std::size_t k) const { return nu_.at(k); }
  double homogeneous_dimension() const noexcept { return q_; }

  bool is_isotropic() const noexcept;
  bool is_heisenberg() const noexcept;

  /// "nu=(1,1,2)" with shortest round-trip number formatting.
  std::string describe() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.nu_ == b.nu_; }

 private:
  std::vector<double> nu_;
  double q_ = 0.0;
};

double homogeneous_dimension(const GroupSpec& spec) noexcept;

/// Writes D_lambda(x) into out. Throws std::invalid_argument unless lambda > 0.
void dilate_into(const GroupSpec& spec, double lambda, PointView x, std::span<double> out);
Point dilate(const GroupSpec& spec, double lambda, PointView x);

/// A single dilation D_lambda viewed as a value.
class DilationAction {
 public:
  explicit DilationAction(double lambda);

  double scale() const noexcept { return lambda_; }
  Point apply(const GroupSpec& spec, PointView x) const { return dilate(spec, lambda_, x); }
  /// D_lambda o D_mu = D_{lambda mu}
  DilationAction then(const DilationAction& other) const { return DilationAction(lambda_ * other.lambda_); }
  /// Determinant of the (diagonal) Jacobian, prod_k lambda^nu_k.
  double jacobian_determinant(const GroupSpec& spec) const;
  /// lambda^Q, the closed form of the determinant.
  double volume_factor(const GroupSpec& spec) const;

 private:
  double lambda_;
};

std::string format_number(double value);

}  // namespace hardy
