#include "poisswell/elliptic.hpp"
#include "poisswell/hydro.hpp"
#include "poisswell/initial_data.hpp"
#include "poisswell/pauli_solver.hpp"
#include "poisswell/sources.hpp"

#include <benchmark/benchmark.h>

using namespace poisswell;

namespace {

Grid grid_for(benchmark::State const& state)
{
    return Grid::cube(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
}

InitialDataSpec bump()
{
    InitialDataSpec d;
    d.family = InitialFamily::gaussian_bump;
    return d;
}

void BM_Gradient(benchmark::State& state)
{
    Spectral const sp(grid_for(state));
    auto const f = random_smooth_scalar(sp.grid(), 1);
    for (auto _ : state) benchmark::DoNotOptimize(sp.gradient(f));
    state.SetItemsProcessed(state.iterations() * sp.grid().size());
}

void BM_Poisson(benchmark::State& state)
{
    Spectral const sp(grid_for(state));
    auto const rho = density(random_smooth_spinor(sp.grid(), 2));
    for (auto _ : state) benchmark::DoNotOptimize(solve_poisson_neutral(sp, rho));
    state.SetItemsProcessed(state.iterations() * sp.grid().size());
}

void BM_ScreenedSolve(benchmark::State& state)
{
    Spectral const sp(grid_for(state));
    auto const a = make_initial_state(sp, bump(), 0.1).a;
    auto const rho = density(a);
    auto const rhs = kinetic_current(sp, a, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(solve_screened_vector(sp, rhs, rho));
    state.SetItemsProcessed(state.iterations() * sp.grid().size());
}

void BM_PauliStep(benchmark::State& state)
{
    Spectral const sp(grid_for(state));
    SimParams p;
    p.epsilon = 0.1;
    p.dt = 1e-3;
    auto psi = make_initial_spinor(sp, bump(), p.epsilon);
    for (auto _ : state) psi = step_pauli(sp, psi, p);
    state.SetItemsProcessed(state.iterations() * sp.grid().size());
}

void BM_WkbRk4Step(benchmark::State& state)
{
    Spectral const sp(grid_for(state));
    SimParams p;
    p.epsilon = 0.1;
    auto st = make_initial_state(sp, bump(), p.epsilon);
    auto const rhs = self_consistent_rhs(sp, p);
    for (auto _ : state) st = step_rk4(sp, st, 1e-4, rhs);
    state.SetItemsProcessed(state.iterations() * sp.grid().size());
}

void shapes(benchmark::internal::Benchmark* b)
{
    b->Args({1, 256})->Args({1, 4096})->Args({2, 64})->Args({3, 32});
}

} // namespace

BENCHMARK(BM_Gradient)->Apply(shapes);
BENCHMARK(BM_Poisson)->Apply(shapes);
BENCHMARK(BM_ScreenedSolve)->Apply(shapes);
BENCHMARK(BM_PauliStep)->Apply(shapes);
BENCHMARK(BM_WkbRk4Step)->Apply(shapes);

BENCHMARK_MAIN();
