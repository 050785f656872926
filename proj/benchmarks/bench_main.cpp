#include <benchmark/benchmark.h>

#include "qdyn/complex_poly.hpp"
#include "qdyn/operator_s.hpp"
#include "qdyn/orbits.hpp"
#include "qdyn/render.hpp"

namespace {

void BM_SApply(benchmark::State& state) {
    qdyn::Complex z(0.3, 0.7);
    for (auto _ : state) {
        auto w = qdyn::s_apply({0.3, 0.2}, z);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(BM_SApply);

void BM_PeriodPolynomialRoots(benchmark::State& state) {
    const auto p = qdyn::period_polynomial(0.75, static_cast<int>(state.range(0)));
    qdyn::RootOptions opts;
    opts.start = qdyn::RootStart::NewtonPolygon;
    for (auto _ : state) benchmark::DoNotOptimize(qdyn::find_roots(p, opts));
    state.SetLabel("degree " + std::to_string(p.degree()));
}
BENCHMARK(BM_PeriodPolynomialRoots)->Arg(1)->Arg(2)->Arg(3);

void BM_FindPeriodicOrbits(benchmark::State& state) {
    const int period = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(qdyn::find_periodic_orbits(0.75, period));
}
BENCHMARK(BM_FindPeriodicOrbits)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_DynPlane(benchmark::State& state) {
    const qdyn::Window w{-3.0, 3.0, -3.0, 3.0, 200, 200};
    const auto threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(qdyn::dyn_plane({-2.0, 1.0}, w, {}, {}, threads));
}
BENCHMARK(BM_DynPlane)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ParamPlane(benchmark::State& state) {
    const qdyn::Window w{-1.0, 3.0, -2.0, 2.0, 200, 200};
    for (auto _ : state) benchmark::DoNotOptimize(qdyn::param_plane(w, {}, qdyn::CriticSelector::Zc1, 1));
}
BENCHMARK(BM_ParamPlane)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
