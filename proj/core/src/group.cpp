#include "hardy/group.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace hardy {

GroupSpec::GroupSpec(std::vector<double> exponents) : nu_(std::move(exponents)) {
  if (nu_.empty()) {
    throw std::invalid_argument("GroupSpec: dimension must be at least 1");
  }
  for (double v : nu_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("GroupSpec: dilation exponents must be positive and finite");
    }
    q_ += v;
  }
}

GroupSpec GroupSpec::isotropic(std::size_t n) { return GroupSpec(std::vector<double>(n, 1.0)); }

GroupSpec GroupSpec::heisenberg() { return GroupSpec({1.0, 1.0, 2.0}); }

bool GroupSpec::is_isotropic() const noexcept {
  for (double v : nu_) {
    if (v != 1.0) return false;
  }
  return true;
}

bool GroupSpec::is_heisenberg() const noexcept {
  return nu_.size() == 3 && nu_[0] == 1.0 && nu_[1] == 1.0 && nu_[2] == 2.0;
}

std::string GroupSpec::describe() const {
  std::string out = "nu=(";
  for (std::size_t k = 0; k < nu_.size(); ++k) {
    if (k) out += ',';
    out += format_number(nu_[k]);
  }
  out += ')';
  return out;
}

double homogeneous_dimension(const GroupSpec& spec) noexcept { return spec.homogeneous_dimension(); }

void dilate_into(const GroupSpec& spec, double lambda, PointView x, std::span<double> out) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("dilate: scale must be positive");
  }
  if (x.size() != spec.dimension() || out.size() != spec.dimension()) {
    throw std::invalid_argument("dilate: point dimension does not match the group");
  }
  if (lambda == 1.0) {
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k];
    return;
  }
  const auto nu = spec.exponents();
  for (std::size_t k = 0; k < x.size(); ++k) {
    out[k] = std::pow(lambda, nu[k]) * x[k];
  }
}

Point dilate(const GroupSpec& spec, double lambda, PointView x) {
  Point out(x.size());
  dilate_into(spec, lambda, x, out);
  return out;
}

DilationAction::DilationAction(double lambda) : lambda_(lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("DilationAction: scale must be positive and finite");
  }
}

double DilationAction::jacobian_determinant(const GroupSpec& spec) const {
  double det = 1.0;
  for (double v : spec.exponents()) det *= std::pow(lambda_, v);
  return det;
}

double DilationAction::volume_factor(const GroupSpec& spec) const {
  return std::pow(lambda_, spec.homogeneous_dimension());
}

std::string format_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

}  // namespace hardy
