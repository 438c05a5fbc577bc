#include <benchmark/benchmark.h>

#include <vector>

#include "syncheom/bessel.hpp"
#include "syncheom/heom.hpp"
#include "syncheom/phase_space.hpp"

using namespace syncheom;

namespace {

const DriveParams kDrive{1.0, 0.0, 60.0, 60.0 / 2.404825557695773};
const BathParams kBath{1.0, 0.5, 0.5};

void BM_HeomRhs(benchmark::State& state) {
    SolverConfig cfg;
    cfg.K = static_cast<int>(state.range(0));
    cfg.L = static_cast<int>(state.range(1));
    const HeomSolver solver(kDrive, kBath, cfg);
    const StateVector x = solver.initial_state(DensityMatrix::from_bloch({1.0, 0.0, 0.0}));
    std::vector<cplx> dx(x.size());
    double t = 0.0;
    for (auto _ : state) {
        solver.rhs(t, x, dx);
        benchmark::DoNotOptimize(dx.data());
        t += 1e-3;
    }
    state.counters["ados"] = static_cast<double>(solver.hierarchy().size());
}
BENCHMARK(BM_HeomRhs)->Args({1, 2})->Args({4, 6})->Args({4, 10})->Args({6, 12});

void BM_BesselJ(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bessel_j(static_cast<int>(state.range(0)), x));
        x += 1e-3;
        if (x > 10.0) x = 0.1;
    }
}
BENCHMARK(BM_BesselJ)->Arg(0)->Arg(7);

void BM_ShortPropagation(benchmark::State& state) {
    SolverConfig cfg;
    cfg.L = static_cast<int>(state.range(0));
    const auto times = uniform_times(1.0, 11);
    const DensityMatrix rho0 = DensityMatrix::from_bloch({1.0, 0.0, 0.0});
    for (auto _ : state) benchmark::DoNotOptimize(propagate(rho0, kDrive, kBath, cfg, times));
}
BENCHMARK(BM_ShortPropagation)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_SyncIntegral(benchmark::State& state) {
    const DensityMatrix rho = DensityMatrix::from_bloch({0.6, 0.3, 0.2});
    double phi = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sync_measure_integral(rho, phi));
        phi += 0.01;
    }
}
BENCHMARK(BM_SyncIntegral);

}  // namespace

BENCHMARK_MAIN();
