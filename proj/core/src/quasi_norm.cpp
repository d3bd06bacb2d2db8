#include "hardy/quasi_norm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hardy {

namespace {

// std::pow with exact shortcuts for the exponents the common norms produce.
double power(double a, double e) {
  if (e == 1.0) return a;
  if (e == 2.0) return a * a;
  if (e == 4.0) {
    const double b = a * a;
    return b * b;
  }
  if (e == 0.5) return std::sqrt(a);
  if (e == 0.25) return std::sqrt(std::sqrt(a));
  return std::pow(a, e);
}

}  // namespace

std::string to_string(NormFamily family) {
  switch (family) {
    case NormFamily::p_sum: return "p-sum";
    case NormFamily::max: return "max";
    case NormFamily::koranyi: return "koranyi";
    case NormFamily::euclidean: return "euclidean";
  }
  return "unknown";
}

QuasiNorm::QuasiNorm(GroupSpec spec, NormFamily family, double p)
    : spec_(std::move(spec)), family_(family), p_(p) {
  const auto nu = spec_.exponents();
  if (family_ == NormFamily::p_sum) {
    for (double v : nu) power_.push_back(p_ / v);
  } else if (family_ == NormFamily::max) {
    for (double v : nu) power_.push_back(1.0 / v);
  }
}

QuasiNorm QuasiNorm::p_sum(GroupSpec spec, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw std::invalid_argument("p-sum quasi-norm: p must be positive and finite");
  }
  return QuasiNorm(std::move(spec), NormFamily::p_sum, p);
}

QuasiNorm QuasiNorm::max(GroupSpec spec) { return QuasiNorm(std::move(spec), NormFamily::max, 0.0); }

QuasiNorm QuasiNorm::euclidean(GroupSpec spec) {
  if (!spec.is_isotropic()) {
    throw std::invalid_argument("euclidean norm requires isotropic dilations nu = (1, ..., 1)");
  }
  return QuasiNorm(std::move(spec), NormFamily::euclidean, 2.0);
}

QuasiNorm QuasiNorm::koranyi(GroupSpec spec) {
  if (!spec.is_heisenberg()) {
    throw std::invalid_argument("koranyi norm requires the Heisenberg group n = 3, nu = (1, 1, 2)");
  }
  return QuasiNorm(std::move(spec), NormFamily::koranyi, 4.0);
}

double QuasiNorm::operator()(PointView x) const {
  switch (family_) {
    case NormFamily::p_sum: {
      double s = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) {
        const double a = std::abs(x[k]);
        if (a > 0.0) s += power(a, power_[k]);
      }
      return s > 0.0 ? power(s, 1.0 / p_) : 0.0;
    }
    case NormFamily::max: {
      double m = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) {
        const double a = std::abs(x[k]);
        if (a > 0.0) m = std::max(m, power(a, power_[k]));
      }
      return m;
    }
    case NormFamily::euclidean: {
      double s = 0.0;
      for (double v : x) s += v * v;
      return std::sqrt(s);
    }
    case NormFamily::koranyi: {
      const double h = x[0] * x[0] + x[1] * x[1];
      return std::sqrt(std::sqrt(h * h + x[2] * x[2]));
    }
  }
  return 0.0;
}

double QuasiNorm::value_and_gradient(PointView x, std::span<double> grad) const {
  const std::size_t n = x.size();
  std::fill(grad.begin(), grad.end(), 0.0);
  switch (family_) {
    case NormFamily::p_sum: {
      // d|x|/dx_k = |x|^{1-p} |x_k|^{p/nu_k - 1} sign(x_k) / nu_k
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double a = std::abs(x[k]);
        if (a > 0.0) {
          const double t = power(a, power_[k]);
          s += t;
          grad[k] = t / a;
        }
      }
      if (s <= 0.0) return 0.0;
      const double r = power(s, 1.0 / p_);
      const double scale = r / s;  // |x|^{1-p}
      const auto nu = spec_.exponents();
      for (std::size_t k = 0; k < n; ++k) {
        grad[k] = x[k] > 0.0 ? grad[k] * scale / nu[k] : -grad[k] * scale / nu[k];
      }
      return r;
    }
    case NormFamily::max: {
      double m = 0.0;
      std::size_t arg = n;
      for (std::size_t k = 0; k < n; ++k) {
        const double a = std::abs(x[k]);
        if (a > 0.0) {
          const double t = power(a, power_[k]);
          if (t > m) {
            m = t;
            arg = k;
          }
        }
      }
      if (arg < n) {
        const double a = std::abs(x[arg]);
        const double g = power_[arg] * m / a;
        grad[arg] = x[arg] > 0.0 ? g : -g;
      }
      return m;
    }
    case NormFamily::euclidean: {
      double s = 0.0;
      for (double v : x) s += v * v;
      const double r = std::sqrt(s);
      if (r > 0.0) {
        for (std::size_t k = 0; k < n; ++k) grad[k] = x[k] / r;
      }
      return r;
    }
    case NormFamily::koranyi: {
      const double h = x[0] * x[0] + x[1] * x[1];
      const double r = std::sqrt(std::sqrt(h * h + x[2] * x[2]));
      if (r > 0.0) {
        const double r3 = r * r * r;
        grad[0] = x[0] * h / r3;
        grad[1] = x[1] * h / r3;
        grad[2] = x[2] / (2.0 * r3);
      }
      return r;
    }
  }
  return 0.0;
}

bool QuasiNorm::smooth_across_axis(std::size_t k) const {
  switch (family_) {
    case NormFamily::euclidean:
    case NormFamily::koranyi: return true;
    case NormFamily::max: return false;
    case NormFamily::p_sum: {
      const double e = power_.at(k);
      return e == std::round(e) && static_cast<long long>(e) % 2 == 0;
    }
  }
  return false;
}

double QuasiNorm::coordinate_bound(double radius, std::size_t k) const {
  return std::pow(radius, spec_.exponent(k));
}

std::string QuasiNorm::label() const {
  if (family_ == NormFamily::p_sum) return "p-sum(p=" + format_number(p_) + ")";
  return to_string(family_);
}

}  // namespace hardy
