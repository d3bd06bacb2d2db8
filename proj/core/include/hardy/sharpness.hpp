#pragma once

#include <span>
#include <string>
#include <vector>

#include "hardy/field.hpp"
#include "hardy/identities.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/tridiagonal.hpp"

namespace hardy {

/// Minimize  int phi'(r)^2 r^{Q-1-2a} dr / int phi(r)^2 r^{Q-3-2a} dr  over
/// profiles vanishing at both ends of [a, b], L = ln(b/a).
///
/// With t = ln r both integrals carry the weight exp(2 mu t), mu = (Q-2-2a)/2,
/// so the problem lives on t in [0, L] and does not depend on a.
struct RayleighProblem {
  double Q = 3.0;
  double alpha = 0.0;
  double log_length = 8.0;
  int grid_size = 8192;  // intervals in t; grid_size - 1 unknowns

  void validate() const;
  double mu() const noexcept { return sharp_mu(Q, alpha); }
  double step() const noexcept { return log_length / grid_size; }
};

/// Ratio of the two radial integrals for an arbitrary profile (S cancels).
double rayleigh_quotient(const RadialProfile& profile, double q, double alpha, const QuadratureSettings& settings);

/// phi(r) = sin(pi ln r / L) r^{-mu} on [1, e^L].
RadialProfile log_sine_profile(double mu, double log_length);

/// Finite-difference discretisation on the uniform t-grid: stiffness K from
/// midpoint weights, lumped mass M = h diag(w). symmetric = M^{-1/2} K M^{-1/2}.
struct RayleighOperator {
  std::vector<double> t;        // interior nodes
  std::vector<double> weight;   // exp(2 mu (t - L/2)) at the nodes
  std::vector<double> stiffness_diagonal;
  std::vector<double> stiffness_lower;  // K(i+1, i)
  std::vector<double> stiffness_upper;  // K(i, i+1)
  std::vector<double> mass;
  SymmetricTridiagonal symmetric;
  double asymmetry = 0.0;  // max |K(i+1,i) - K(i,i+1)| / max |K(i,i)|
};

RayleighOperator assemble_rayleigh_operator(const RayleighProblem& problem);

struct RayleighMinimum {
  double value = 0.0;
  std::vector<double> t;        // interior nodes
  std::vector<double> profile;  // phi at the nodes, positive, max-normalised
  std::string method;
  double residual = 0.0;
  int iterations = 0;
};

RayleighMinimum minimize_rayleigh(const RayleighProblem& problem);

/// Least-squares slope of ln|phi| against t over |t - L/2| <= half_window:
/// the local power-law exponent of phi in r.
double profile_exponent(const RayleighMinimum& minimum, double log_length, double half_window);

struct ScanRecord {
  double log_length = 0.0;
  double quotient = 0.0;
  double gap = 0.0;               // quotient - mu^2
  double profile_exponent = 0.0;  // target -mu
  double fitted_decay_so_far = 0.0;  // NaN until two points exist
  std::string method;
};

struct SharpnessScanResult {
  double Q = 0.0;
  double alpha = 0.0;
  double mu = 0.0;
  int grid_size = 0;
  std::vector<ScanRecord> records;
  double decay_exponent = 0.0;      // -slope of ln gap vs ln L
  double extrapolated_limit = 0.0;  // intercept of quotient vs 1/L^2
  bool gaps_positive = false;
  bool monotone = false;  // quotient strictly decreasing in L
};

/// L_sequence must be strictly increasing.
SharpnessScanResult sharpness_scan(double q, double alpha, std::span<const double> log_lengths, int grid_size = 8192);

struct ExtremizerRow {
  double plateau_length = 0.0;
  double rho = 0.0;              // ckn ratio
  double remainder_ratio = 0.0;  // C / B
  double quotient = 0.0;         // A / B
};

/// Extremizer members centred at r = 1 for each plateau length (increasing).
std::vector<ExtremizerRow> extremizer_quotients(const EvaluationContext& ctx, double alpha, double taper,
                                                std::span<const double> plateau_lengths);

}  // namespace hardy
