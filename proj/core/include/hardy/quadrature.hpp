#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hardy/field.hpp"
#include "hardy/gauss_legendre.hpp"

namespace hardy {

struct QuadratureSettings {
  // 1D radial route: composite Gauss-Legendre in t = ln r.
  int panels = 64;
  int nodes_per_panel = 16;
  // Tensor grid: per-axis composite Gauss-Legendre. The panel count is kept
  // even so coordinate hyperplanes fall on panel boundaries; axes on which
  // the quasi-norm is not smooth get geometric refinement toward 0.
  int cartesian_panels = 20;
  int cartesian_nodes_per_panel = 8;
  int cartesian_grading_levels = 6;
  double cartesian_grading_ratio = 0.2;
  std::int64_t mc_samples = 1'000'000;
  std::uint64_t mc_seed = 20240917;
  int threads = 0;  // 0: hardware concurrency

  void validate() const;
  int cartesian_resolution() const noexcept { return cartesian_panels * cartesian_nodes_per_panel; }
  /// Canonical text of every numeric setting that can change a result.
  std::string fingerprint() const;
};

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dimension() const noexcept { return lower.size(); }
  double volume() const;
};

/// Smallest coordinate box containing the closed quasi-ball of the radius.
Box bounding_box(const QuasiNorm& norm, double radius);
bool box_covers(const Box& box, const QuasiNorm& norm, const Annulus& support);

/// Integral of g(r) r^weight_exponent over [lo, hi].
///
/// For lo > 0 the integral runs in t = ln r with the power folded into a
/// single exponential, exp((weight_exponent + 1) t). With lo == 0 a
/// negative exponent is rejected as unbounded.
double integrate_radial(const std::function<double(double)>& g, double lo, double hi, double weight_exponent,
                        const QuadratureSettings& settings);
double integrate_radial(const std::function<double(double)>& g, const Annulus& support, double weight_exponent,
                        const QuadratureSettings& settings);

struct RadialTerm {
  std::function<double(double)> g;
  double weight_exponent = 0.0;
};

/// Several radial integrals sharing the same nodes.
std::vector<double> integrate_radial(std::span<const RadialTerm> terms, const Annulus& support,
                                     const QuadratureSettings& settings);

/// Writes `count` integrand values at one point.
using VectorIntegrand = std::function<void(PointView, std::span<double>)>;

struct CartesianResult {
  std::vector<double> values;
  std::size_t nodes = 0;
  bool covers_support = true;
};

/// Tensor-product Gauss-Legendre over the box (n <= 3). Slabs along the first
/// axis may run on several threads; partial sums are combined in slab order
/// so the result does not depend on the thread count.
CartesianResult integrate_cartesian(const VectorIntegrand& integrand, std::size_t count, const Box& box,
                                    const QuasiNorm& norm, const std::optional<Annulus>& support,
                                    const QuadratureSettings& settings);
double integrate_cartesian(const std::function<double(PointView)>& integrand, const Box& box, const QuasiNorm& norm,
                           const QuadratureSettings& settings);

/// Per-axis composite rule used by integrate_cartesian (exposed for tests).
CompositeRule cartesian_axis_rule(const Box& box, const QuasiNorm& norm, std::size_t axis,
                                  const QuadratureSettings& settings);

struct McEstimate {
  double value = 0.0;
  double standard_error = 0.0;
};

/// Uniform-sampling Monte Carlo over the box; deterministic in mc_seed.
std::vector<McEstimate> mc_integrate(const VectorIntegrand& integrand, std::size_t count, const Box& box,
                                     const QuadratureSettings& settings);
McEstimate mc_integrate(const std::function<double(PointView)>& integrand, const Box& box,
                        const QuadratureSettings& settings);

/// Total mass S of the angular measure in the polar decomposition
/// int_G f dx = int_0^inf int_sphere f(ry) r^{Q-1} dsigma(y) dr,
/// obtained as (Cartesian integral of phi(|x|)) / (int phi(r) r^{Q-1} dr) for
/// two independent reference bumps.
struct SphereMeasureConstant {
  double value = 1.0;
  std::string method;  // "two-bump", "closed-form" or "unnormalized"
  std::string reference_a;
  std::string reference_b;
  double cartesian_a = 0.0;
  double radial_a = 0.0;
  double cartesian_b = 0.0;
  double radial_b = 0.0;
  double estimate_b = 0.0;
  double discrepancy = 0.0;  // |S_a - S_b| / S_a
};

SphereMeasureConstant derive_sphere_constant(const QuasiNorm& norm, const QuadratureSettings& settings,
                                             double max_discrepancy = 1e-4);

/// 2 pi^{n/2} / Gamma(n/2) for Euclidean-type norms, otherwise nullopt.
std::optional<double> closed_form_sphere_constant(const QuasiNorm& norm);

/// Deterministic samples with |x| uniform in the annulus, avoiding the band
/// |x_k| < band |x|^{nu_k} around coordinate hyperplanes.
std::vector<Point> sample_annulus(const QuasiNorm& norm, const Annulus& shell, std::size_t count, std::uint64_t seed,
                                  double exclusion_band = 1e-8);

/// Uniform double in [0, 1) from a 64-bit word; identical on every platform.
inline double unit_interval(std::uint64_t word) noexcept { return static_cast<double>(word >> 11) * 0x1.0p-53; }

}  // namespace hardy
