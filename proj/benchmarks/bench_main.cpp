#include <benchmark/benchmark.h>

#include <random>

#include "orbiloop/catalog.hpp"
#include "orbiloop/coc.hpp"
#include "orbiloop/deloc.hpp"
#include "orbiloop/loop.hpp"
#include "orbiloop/zcomplex.hpp"

using namespace orbiloop;

namespace {

void BM_CyclicCohomology(benchmark::State& state) {
    const auto g = gpd::FiniteGroup::cyclic(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cohom::cohomology(g, cohom::Coeff::Z, 4));
}
BENCHMARK(BM_CyclicCohomology)->Arg(2)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_GroupCohomology(benchmark::State& state) {
    static const char* names[] = {"S3", "D4", "Q8", "Z2xZ2"};
    const auto g = *catalog::group(names[state.range(0)]);
    state.SetLabel(names[state.range(0)]);
    for (auto _ : state) benchmark::DoNotOptimize(cohom::cohomology(g, cohom::Coeff::Z, 3));
}
BENCHMARK(BM_GroupCohomology)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_LoopGroupoid(benchmark::State& state) {
    const auto g = gpd::oneObjectGroupoid(gpd::FiniteGroup::cyclic(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        const auto lx = loop::loopGroupoid(g);
        benchmark::DoNotOptimize(loop::sectors(lx));
    }
}
BENCHMARK(BM_LoopGroupoid)->RangeMultiplier(2)->Range(4, 64);

void BM_InertiaEquivalence(benchmark::State& state) {
    const auto x = *catalog::groupoid("D4-square");
    const auto lx = loop::loopGroupoid(x);
    for (auto _ : state) benchmark::DoNotOptimize(gpd::isEquivalence(loop::inertiaViaEqualizer(x, lx).toLoop));
}
BENCHMARK(BM_InertiaEquivalence)->Unit(benchmark::kMillisecond);

void BM_HolonomyTheorem(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const auto gamma = gpd::shareGroup(gpd::FiniteGroup::cyclic(m));
    const auto phi = cohom::characters(gamma)[1];
    for (auto _ : state) benchmark::DoNotOptimize(coc::verifyHolonomyTheorem(gamma, phi, 4 * m * m));
}
BENCHMARK(BM_HolonomyTheorem)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Delocalized(benchmark::State& state) {
    static const char* names[] = {"S2/Z2-rotation", "T2/Z7-translation", "S1/D3-dihedral"};
    const auto k = *catalog::gammaComplex(names[state.range(0)]);
    state.SetLabel(names[state.range(0)]);
    for (auto _ : state) benchmark::DoNotOptimize(deloc::delocalized(k));
}
BENCHMARK(BM_Delocalized)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_TwistedRanks(benchmark::State& state) {
    const auto k = simp::simplexBoundary(static_cast<int>(state.range(0)));
    std::mt19937 rng(1);
    std::uniform_int_distribution<int> d(-3, 3);
    std::vector<Rational> mu(static_cast<std::size_t>(k.count(2)));
    for (auto& x : mu) x = d(rng);
    const auto lambda = simp::toDense(simp::coboundaryMatrix<Rational>(k, 2).apply(simp::toSparse(mu)), k.count(3));
    const auto t = zc::buildTwisted(k, lambda, std::nullopt, 2);
    for (auto _ : state) benchmark::DoNotOptimize(zc::twistedCohomology(t, t.mMax()));
}
BENCHMARK(BM_TwistedRanks)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_PeriodicS3(benchmark::State& state) {
    const auto s3 = *catalog::complex("S3");
    const auto gen = zc::topGenerator(s3);
    for (auto _ : state) benchmark::DoNotOptimize(zc::periodicCohomology(s3, gen));
}
BENCHMARK(BM_PeriodicS3)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
