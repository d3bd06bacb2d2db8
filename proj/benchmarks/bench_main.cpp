#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "hardy/field_families.hpp"
#include "hardy/identities.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/sharpness.hpp"
#include "hardy/tridiagonal.hpp"

using namespace hardy;

namespace {

QuasiNorm norm_for(int which) {
  switch (which) {
    case 0: return QuasiNorm::p_sum(GroupSpec::isotropic(3), 2.0);
    case 1: return QuasiNorm::p_sum(GroupSpec({1.0, 2.0, 3.0}), 4.0);
    default: return QuasiNorm::koranyi(GroupSpec::heisenberg());
  }
}

const std::vector<double> kAlphas{-1.0, -0.3, 0.0, 0.7, 1.0};

void BM_QuasiNorm(benchmark::State& state) {
  const QuasiNorm norm = norm_for(static_cast<int>(state.range(0)));
  const std::vector<Point> pts = sample_annulus(norm, Annulus(0.5, 3.0), 1024, 1);
  for (auto _ : state) {
    double s = 0.0;
    for (const Point& x : pts) s += norm(x);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
  state.SetLabel(norm.label());
}
BENCHMARK(BM_QuasiNorm)->DenseRange(0, 2);

void BM_RadialTriples(benchmark::State& state) {
  const QuasiNorm norm = norm_for(static_cast<int>(state.range(0)));
  const EvaluationContext ctx{norm, QuadratureSettings{}, ToleranceProfile{}, SphereMeasureConstant{}};
  const ScalarField f = radial_bump(norm, 2.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(weighted_norm_triples(ctx, f, kAlphas, Route::radial));
}
BENCHMARK(BM_RadialTriples)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_CartesianTriples(benchmark::State& state) {
  const QuasiNorm norm = norm_for(static_cast<int>(state.range(0)));
  const EvaluationContext ctx{norm, QuadratureSettings{}, ToleranceProfile{}, SphereMeasureConstant{}};
  const ScalarField f = anisotropic_product(norm, 2.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(weighted_norm_triples(ctx, f, kAlphas, Route::cartesian));
}
BENCHMARK(BM_CartesianTriples)->DenseRange(0, 2)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_SmallestEigenpair(benchmark::State& state) {
  const RayleighOperator op = assemble_rayleigh_operator({4.0, 0.0, 16.0, static_cast<int>(state.range(0))});
  for (auto _ : state) benchmark::DoNotOptimize(smallest_eigenpair(op.symmetric));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SmallestEigenpair)->RangeMultiplier(4)->Range(512, 32768)->Unit(benchmark::kMillisecond)->Complexity();

void BM_SharpnessScan(benchmark::State& state) {
  const std::vector<double> lengths{4.0, 8.0, 16.0};
  for (auto _ : state) benchmark::DoNotOptimize(sharpness_scan(6.0, 1.0, lengths));
}
BENCHMARK(BM_SharpnessScan)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
