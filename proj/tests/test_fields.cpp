#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "hardy/field_families.hpp"
#include "hardy/identities.hpp"
#include "hardy/operators.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/sharpness.hpp"
#include "test_support.hpp"

using namespace hardy;
using hardy::testing::Gen;

namespace {

struct Family {
  std::string name;
  ScalarField field;
};

std::vector<Family> families(const QuasiNorm& norm) {
  const ScalarField bump = radial_bump(norm, 2.0, 1.0);
  const std::size_t n = norm.group().dimension();
  std::vector<double> k(n, 0.4);
  k[0] = -0.7;
  const double mu = sharp_mu(norm.group().homogeneous_dimension(), 0.0);
  return {
      {"bump", bump},
      {"radial-phase", complex_phase_wrap(bump, Phase::radial_linear(norm, 1.0))},
      {"linear-phase", complex_phase_wrap(bump, Phase::linear(k))},
      {"product", anisotropic_product(norm, 2.0, 1.0)},
      {"angular", angular_product(norm, 2.0, 1.0, 0)},
      {"extremizer", extremizer_member(norm, mu, 0.5, 4.0, 0.5)},
      {"dilated", compose_dilation(bump, norm.group(), 2.0)},
      {"divided", divide_by_norm_power(bump, norm, 0.7)},
  };
}

/// Unit-modulus direction scaled to quasi-norm r.
Point at_radius(const QuasiNorm& norm, Gen& gen, double r) {
  const Point y = gen.point(norm.group().dimension());
  return dilate(norm.group(), r / norm(y), y);
}

EvaluationContext radial_context(const QuasiNorm& norm) {
  return EvaluationContext{norm, QuadratureSettings{}, ToleranceProfile{}, SphereMeasureConstant{}};
}

}  // namespace

TEST_CASE("bump values at the centre and the boundary") {
  for (const QuasiNorm& norm : hardy::testing::matrix_norms()) {
    const ScalarField f = radial_bump(norm, 2.0, 1.0);
    Gen gen(1);
    CHECK(f(at_radius(norm, gen, 2.0)).real() == doctest::Approx(0.3678794412).epsilon(1e-10));
    CHECK(std::abs(f(at_radius(norm, gen, 1.0))) == 0.0);
    CHECK(std::abs(f(at_radius(norm, gen, 3.0))) == 0.0);
    CHECK(f.is_radial());
    CHECK(f.support().inner == 1.0);
    CHECK(f.support().outer == 3.0);
  }
  const QuasiNorm e = QuasiNorm::euclidean(GroupSpec::isotropic(3));
  CHECK_THROWS_AS(radial_bump(e, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(radial_bump(e, 2.0, 0.0), std::invalid_argument);
}

TEST_CASE("bump integral over R^3 agrees with a 10^7-sample Monte Carlo oracle") {
  const QuasiNorm e = QuasiNorm::euclidean(GroupSpec::isotropic(3));
  const ScalarField f = radial_bump(e, 2.0, 1.0);
  QuadratureSettings s;
  s.mc_samples = 10'000'000;
  const Box box = bounding_box(e, 3.0);
  auto g = [&](PointView x) { return f(x).real(); };
  const double quad = integrate_cartesian(g, box, e, s);
  const McEstimate mc = mc_integrate(g, box, s);
  MESSAGE("quadrature " << quad << ", MC " << mc.value << " +- " << mc.standard_error);
  CHECK(std::abs(quad - mc.value) <= 3.0 * mc.standard_error);
  // polar form with S = 4 pi
  const RadialProfile p = f.profile();
  const double radial = integrate_radial([&](double r) { return p.value(r).real(); }, p.support, 2.0, s);
  CHECK(quad == doctest::Approx(4.0 * std::numbers::pi * radial).epsilon(1e-6));
}

TEST_CASE("phase wrap keeps the modulus and the weighted norms") {
  for (const QuasiNorm& norm : hardy::testing::matrix_norms()) {
    const ScalarField base = radial_bump(norm, 2.0, 1.0);
    const ScalarField zero = complex_phase_wrap(base, Phase::zero(3));
    const ScalarField wrapped = complex_phase_wrap(base, Phase::radial_linear(norm, 1.0));
    CHECK(wrapped.is_radial());
    for (const Point& x : sample_annulus(norm, Annulus(1.05, 2.95), 50, 3)) {
      CHECK(zero(x) == base(x));
      CHECK(zero.gradient(x) == base.gradient(x));
      CHECK(std::abs(wrapped(x)) == doctest::Approx(base(x).real()).epsilon(1e-14));
    }
    const EvaluationContext ctx = radial_context(norm);
    for (double alpha : {-1.0, 0.0, 0.7}) {
      const double b0 = weighted_norm_triple(ctx, base, alpha).B;
      CHECK(weighted_norm_triple(ctx, wrapped, alpha).B == doctest::Approx(b0).epsilon(1e-14));
    }
  }
}

TEST_CASE("extremizer member") {
  const QuasiNorm kor = QuasiNorm::koranyi(GroupSpec::heisenberg());
  const double mu = sharp_mu(4.0, 0.0);
  const RadialProfile p = extremizer_profile(mu, 0.1, 10.0, 1.0);
  CHECK(std::abs(p.value(0.1)) == 0.0);
  CHECK(std::abs(p.value(10.0)) == 0.0);
  CHECK(p.value(1.0).real() == doctest::Approx(1.0));
  CHECK_THROWS_AS(extremizer_profile(mu, 0.1, 10.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(extremizer_profile(mu, 0.1, 10.0, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(extremizer_profile(mu, 1.0, 0.5, 0.1), std::invalid_argument);

  SUBCASE("plateau is homogeneous of order -mu") {
    const ScalarField f = extremizer_member_centered(kor, mu, 8.0, 1.0);
    const std::vector<Point> samples = sample_annulus(kor, Annulus(0.5, 2.0), 40, 9);
    const std::vector<double> scales{0.8, 1.25};
    const HomogeneityReport r = check_homogeneity(kor.group(), f, -mu, samples, scales);
    CHECK(r.pass);
    CHECK(r.max_euler_residual <= 1e-10);
    CHECK(r.max_scaling_residual <= 1e-10);
  }

  SUBCASE("Rayleigh quotient on [e^-8, e^8] exceeds 1/4") {
    const RadialProfile q3 = extremizer_profile(0.5, std::exp(-8.0), std::exp(8.0), 1.0);
    const double value = rayleigh_quotient(q3, 3.0, 0.0, QuadratureSettings{});
    MESSAGE("quotient " << value);
    CHECK(value > 0.25);
    const RadialProfile longer = extremizer_profile(0.5, std::exp(-16.0), std::exp(16.0), 1.0);
    CHECK(rayleigh_quotient(longer, 3.0, 0.0, QuadratureSettings{}) < value);
  }

  SUBCASE("B grows across doubling plateaus") {
    const EvaluationContext ctx = radial_context(kor);
    for (double alpha : {-1.0, 0.0, 0.5}) {
      double previous = 0.0;
      for (double plateau : {2.0, 4.0, 8.0, 16.0}) {
        const ScalarField f = extremizer_member_centered(kor, sharp_mu(4.0, alpha), plateau, 1.0);
        const double b = weighted_norm_triple(ctx, f, alpha).B;
        CHECK(b > previous);
        previous = b;
      }
    }
  }
}

TEST_CASE("gradient self-check of every family") {
  const std::vector<double> steps{1e-2, 5e-3, 2.5e-3, 1.25e-3};
  for (const QuasiNorm& norm : hardy::testing::matrix_norms()) {
    for (const Family& fam : families(norm)) {
      const Annulus s = fam.field.support();
      const double pad = 0.05 * (s.outer - s.inner);
      const std::vector<Point> samples = sample_annulus(norm, Annulus(s.inner + pad, s.outer - pad), 50, 17, 1e-2);
      const GradientCheckReport r = gradient_selfcheck(fam.field, samples, steps);
      INFO(norm.label() << " " << fam.name << " order " << r.observed_order << " err " << r.error_at_reference);
      CHECK(r.pass);
      CHECK(r.observed_order >= 1.8);
      CHECK(r.error_at_reference <= 1e-6);
    }
  }
}

TEST_CASE("gradient self-check rejects corrupted partials and accepts zero") {
  const QuasiNorm kor = QuasiNorm::koranyi(GroupSpec::heisenberg());
  const ScalarField bump = radial_bump(kor, 2.0, 1.0);
  const ScalarField corrupted(
      "corrupted", 3, [bump](PointView x) { return bump(x); },
      [bump](PointView x, std::span<Complex> out) {
        bump.gradient(x, out);
        out[2] *= 1.01;
      });
  const std::vector<Point> samples = sample_annulus(kor, Annulus(1.1, 2.9), 50, 5);
  const std::vector<double> steps{1e-2, 5e-3, 2.5e-3};
  CHECK_FALSE(gradient_selfcheck(corrupted, samples, steps).pass);

  const GradientCheckReport z = gradient_selfcheck(zero_field(3), samples, steps);
  CHECK(z.pass);
  CHECK(z.error_at_reference == 0.0);
}

TEST_CASE("every family vanishes outside its annulus") {
  Gen gen(41);
  for (const QuasiNorm& norm : hardy::testing::matrix_norms()) {
    for (const Family& fam : families(norm)) {
      const Annulus s = fam.field.support();
      for (int i = 0; i < 100; ++i) {
        const double r = (i % 2 == 0) ? gen.uniform(0.02, 0.999) * s.inner : gen.uniform(1.001, 4.0) * s.outer;
        const Point x = at_radius(norm, gen, r);
        CHECK(std::abs(fam.field(x)) == 0.0);
        for (const Complex& c : fam.field.gradient(x)) CHECK(std::abs(c) == 0.0);
      }
    }
  }
}

TEST_CASE("compose_dilation evaluates f at D_lambda x") {
  const GroupSpec aniso({1.0, 2.0, 3.0});
  const QuasiNorm p4 = QuasiNorm::p_sum(aniso, 4.0);
  const ScalarField f = anisotropic_product(p4, 2.0, 1.0);
  for (double lambda : {0.5, 2.0}) {
    const ScalarField g = compose_dilation(f, aniso, lambda);
    CHECK(g.support().inner == doctest::Approx(1.0 / lambda));
    for (const Point& x : sample_annulus(p4, g.support(), 20, 8)) {
      CHECK(std::abs(g(x) - f(dilate(aniso, lambda, x))) <= 1e-15);
    }
  }
}

TEST_CASE("monomial and norm power are homogeneous fields without support") {
  const ScalarField m = monomial(2, {2, 1}, 2.0);
  CHECK_FALSE(m.has_support());
  CHECK(m(Point{1.0, 3.0}).real() == doctest::Approx(6.0));
  CHECK_THROWS_AS(monomial(2, {1}), std::invalid_argument);
  CHECK_THROWS_AS(monomial(2, {1, -1}), std::invalid_argument);
}
