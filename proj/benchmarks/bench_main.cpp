#include <benchmark/benchmark.h>

#include <cmath>

#include "qfriction/dispersion.hpp"
#include "qfriction/friction.hpp"
#include "qfriction/montecarlo.hpp"
#include "qfriction/ode.hpp"
#include "qfriction/rng.hpp"

namespace {

using namespace qfriction;

void BM_FrictionCurve(benchmark::State& state) {
    double theta = 1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(friction_form_b(theta));
        theta = theta < 1e6 ? theta * 1.37 : 1e-6;
    }
}
BENCHMARK(BM_FrictionCurve);

void BM_SolveThermalShape(benchmark::State& state) {
    const double c = std::pow(10.0, static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_thermal_shape(c));
    }
}
BENCHMARK(BM_SolveThermalShape)->Arg(-6)->Arg(0)->Arg(6);

void BM_SolveQuantumGasShape(benchmark::State& state) {
    const double c = std::pow(10.0, static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_quantum_gas_shape(c));
    }
}
BENCHMARK(BM_SolveQuantumGasShape)->Arg(-6)->Arg(0)->Arg(6);

void BM_IntegrateVirial(benchmark::State& state) {
    const double rel_tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_virial(1e4, rel_tol).back_y());
    }
}
BENCHMARK(BM_IntegrateVirial)->Arg(6)->Arg(9)->Arg(12);

void BM_CounterStreamNormal(benchmark::State& state) {
    rng::CounterStream stream(42, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(stream.next_normal());
    }
}
BENCHMARK(BM_CounterStreamNormal);

void BM_LangevinEnsemble(benchmark::State& state) {
    SimConfig config;
    config.scheme = Scheme::underdamped;
    config.time_step = 1.0 / 40.0;
    config.t_end = 10.0;
    config.n_trajectories = static_cast<int>(state.range(0));
    config.seed = 1;
    config.threads = static_cast<int>(state.range(1));
    const SimSystem system = SimSystem::reduced();
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_langevin(config, system));
    }
    state.SetItemsProcessed(state.iterations() * config.n_trajectories * 400);
}
BENCHMARK(BM_LangevinEnsemble)->Args({1000, 1})->Args({1000, 4});

void BM_CollisionalEnsemble(benchmark::State& state) {
    SimConfig config;
    config.scheme = Scheme::collisional;
    config.t_end = 20.0;
    config.n_trajectories = static_cast<int>(state.range(0));
    config.seed = 1;
    const SimSystem system = SimSystem::reduced();
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_collisional(config, system));
    }
}
BENCHMARK(BM_CollisionalEnsemble)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
