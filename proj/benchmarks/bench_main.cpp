#include <benchmark/benchmark.h>

#include <cmath>

#include "ineqforge/measure.hpp"
#include "ineqforge/quadrature.hpp"
#include "ineqforge/spectral.hpp"
#include "ineqforge/weight_chain.hpp"

using namespace ineqforge;
using chains::FamilyTag;
using chains::WeightChain;

namespace {

void BM_WeightSequence(benchmark::State& state) {
    WeightChain c({FamilyTag::hardy_interior(3, 1.0), int(state.range(0))});
    double t = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(c.weight_sequence(t));
        t = t * 0.999 + 1e-4;
    }
}
BENCHMARK(BM_WeightSequence)->Arg(2)->Arg(8);

void BM_TableConstruction(benchmark::State& state) {
    for (auto _ : state) {
        WeightChain c({FamilyTag::hp_low_dim(3, -1.0), 3});
        benchmark::DoNotOptimize(c.x_map(0.5));
    }
}
BENCHMARK(BM_TableConstruction)->Unit(benchmark::kMillisecond);

void BM_GaussianQuadrature(benchmark::State& state) {
    const auto m = radial::MeasureSpec::gaussian(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            radial::integrate([](double r) { return std::cos(r) * r; }, m, {0.0, INFINITY}, 1e-13));
    }
}
BENCHMARK(BM_GaussianQuadrature);

void BM_LambdaMin(benchmark::State& state) {
    const int n = int(state.range(0));
    std::vector<double> diag(n, 2.0);
    std::vector<double> off(n - 1, -1.0);
    const auto t = spectral::TridiagonalSystem::from_matrix(diag, off);
    for (auto _ : state) benchmark::DoNotOptimize(spectral::lambda_min(t));
}
BENCHMARK(BM_LambdaMin)->Arg(1000)->Arg(4000);

void BM_VerifyGaussian(benchmark::State& state) {
    WeightChain c({FamilyTag::gaussian_high_dim(3), 3});
    spectral::AssemblyOptions o;
    o.N = 3;
    const auto dom = spectral::Domain::radii(0.1, 25.0);
    for (auto _ : state) benchmark::DoNotOptimize(spectral::verify_inequality(c, dom, o));
}
BENCHMARK(BM_VerifyGaussian)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
