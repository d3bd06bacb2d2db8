#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "hardy/field.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/report.hpp"
#include "hardy/tolerance.hpp"

namespace hardy {

/// How weighted L^2 norms are integrated. Radial fields use the 1D route
/// (scaled by the sphere constant S); everything else the tensor grid.
enum class Route { automatic, radial, cartesian };

std::string to_string(Route route);

/// Group, quasi-norm, quadrature and tolerances shared by a batch of checks,
/// plus the sphere constant used to scale 1D radial integrals.
struct EvaluationContext {
  QuasiNorm norm;
  QuadratureSettings quadrature;
  ToleranceProfile tolerance;
  SphereMeasureConstant sphere;

  const GroupSpec& group() const noexcept { return norm.group(); }
  double homogeneous_dimension() const noexcept { return norm.group().homogeneous_dimension(); }
};

/// Derives S for n <= 3; above that uses the closed form where one exists
/// and S = 1 ("unnormalized") otherwise. Residuals and ratios of radial
/// fields do not depend on S.
EvaluationContext make_context(const QuasiNorm& norm, const QuadratureSettings& quadrature = {},
                               const ToleranceProfile& tolerance = {});

/// A = || |x|^-a R f ||^2, B = || f / |x|^{a+1} ||^2,
/// C = || |x|^-a R f + (Q - 2 - 2a) / (2 |x|^{a+1}) f ||^2.
struct WeightedNormTriple {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double alpha = 0.0;
  Route route = Route::automatic;
  double sphere_constant = 1.0;
};

/// (Q - 2 - 2 alpha) / 2
double sharp_mu(double q, double alpha) noexcept;

Route resolve_route(const EvaluationContext& ctx, const ScalarField& f, Route requested);

/// One pass over the quadrature nodes for every alpha. Requires Q >= 3.
std::vector<WeightedNormTriple> weighted_norm_triples(const EvaluationContext& ctx, const ScalarField& f,
                                                      std::span<const double> alphas, Route route = Route::automatic);
WeightedNormTriple weighted_norm_triple(const EvaluationContext& ctx, const ScalarField& f, double alpha,
                                        Route route = Route::automatic);

/// Monte-Carlo estimates of (A, B, C) over the support box.
std::array<McEstimate, 3> mc_weighted_norm_triple(const EvaluationContext& ctx, const ScalarField& f, double alpha);
/// Same samples for every alpha.
std::vector<std::array<McEstimate, 3>> mc_weighted_norm_triples(const EvaluationContext& ctx, const ScalarField& f,
                                                                std::span<const double> alphas);

/// A - ((Q-2)/2 - alpha)^2 B == C.
IdentityReport verify_remainder_identity(const EvaluationContext& ctx, const ScalarField& f, double alpha,
                                         Route route = Route::automatic);
std::vector<IdentityReport> verify_remainder_identity(const EvaluationContext& ctx, const ScalarField& f,
                                                      std::span<const double> alphas, Route route = Route::automatic);
IdentityReport remainder_report(const EvaluationContext& ctx, const ScalarField& f, const WeightedNormTriple& t);

/// ||R f||^2 == ((Q-2)/2)^2 ||f/|x|||^2 + ||R f + (Q-2)/(2|x|) f||^2, evaluated
/// without going through weighted_norm_triples.
IdentityReport verify_alpha_zero_identity(const EvaluationContext& ctx, const ScalarField& f,
                                          Route route = Route::automatic);

/// ||E f||^2 == (Q/2)^2 ||f||^2 + ||E f + (Q/2) f||^2 with E applied directly.
IdentityReport verify_euler_relation(const EvaluationContext& ctx, const ScalarField& f,
                                     Route route = Route::automatic);

/// int |f|^2/|x|^2 == -2/(Q-2) Re int (f/|x|) conj(R f).
IdentityReport verify_ibp_identity(const EvaluationContext& ctx, const ScalarField& f, Route route = Route::automatic);

/// max over samples of | |x|^-a R f - R(f/|x|^a) - a f/|x|^{a+1} |, with
/// R(f/|x|^a) from a central difference along the dilation ray.
IdentityReport verify_product_rule(const EvaluationContext& ctx, const ScalarField& f, double alpha,
                                   std::span<const Point> samples, double step = 1e-5);

/// |Q-2-2a|/2 ||f/|x|^{a+1}|| <= || |x|^-a R f ||.
IdentityReport verify_ckn_inequality(const EvaluationContext& ctx, const ScalarField& f, double alpha,
                                     Route route = Route::automatic);
IdentityReport ckn_report(const EvaluationContext& ctx, const ScalarField& f, const WeightedNormTriple& t);

/// ||f||^2 <= 2/(Q-2) ||R f|| || |x| f ||.
IdentityReport verify_uncertainty(const EvaluationContext& ctx, const ScalarField& f, Route route = Route::automatic);

/// True for nu = (1,...,1) with the Euclidean norm (or p-sum with p = 2).
bool schwarz_applicable(const QuasiNorm& norm);

/// Euclidean norm only: |R f| <= |grad f| pointwise and
/// || |x|^-a R f || <= || |x|^-a grad f || on the tensor grid.
IdentityReport verify_schwarz_step(const EvaluationContext& ctx, const ScalarField& f, double alpha,
                                   std::span<const Point> samples);

/// ||f/|x|^2|| <= 2/(Q-4) || |x|^-1 R f ||, Q >= 5.
IdentityReport verify_alpha_one_inequality(const EvaluationContext& ctx, const ScalarField& f,
                                           Route route = Route::automatic);

/// Pointwise residual of |x|^-a R f + mu / |x|^{a+1} f = 0 (the equation an
/// extremal would satisfy), max over samples, scaled by max(|x|^-a |R f|, ...).
double extremal_equation_residual(const EvaluationContext& ctx, const ScalarField& f, double alpha,
                                  std::span<const Point> samples);

InputsFingerprint make_inputs(const EvaluationContext& ctx, const ScalarField& f, double alpha);

}  // namespace hardy
