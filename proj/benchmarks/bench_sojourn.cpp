#include <benchmark/benchmark.h>

#include "sojourn_lab/fields.hpp"
#include "sojourn_lab/oracle.hpp"
#include "sojourn_lab/sojourn.hpp"

namespace sojourn_lab {
namespace {

void BM_Philox(benchmark::State& state)
{
    CounterRng rng{1, 0};
    for (auto _ : state)
        benchmark::DoNotOptimize(rng());
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Philox);

void BM_KernelEvaluate(benchmark::State& state)
{
    CounterRng rng{2, 0};
    auto const field = gen_kernel_field(3, static_cast<std::size_t>(state.range(0)), {}, rng);
    auto const t = std::get<SpherePoint>(sample_mu(field.space(), rng));
    for (auto _ : state)
        benchmark::DoNotOptimize(field.evaluate_sphere(t.v));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_KernelEvaluate)->Arg(20)->Arg(200);

void BM_SojournMc(benchmark::State& state)
{
    CounterRng rng{3, 0};
    auto const field = gen_kernel_field(3, 20, {}, rng);
    Point const a = north_pole(3);
    bool const antithetic = state.range(0) != 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(sojourn_mc(field, a, 100, antithetic, rng).value);
}
BENCHMARK(BM_SojournMc)->Arg(0)->Arg(1);

void BM_PlanetReplication(benchmark::State& state)
{
    std::uint64_t r = 0;
    Point const a = north_pole(3);
    for (auto _ : state)
    {
        auto rng = replication_stream(4, r++);
        auto const field = gen_kernel_field(3, 20, {}, rng);
        benchmark::DoNotOptimize(sojourn_mc(field, a, 100, true, rng).value);
    }
}
BENCHMARK(BM_PlanetReplication);

void BM_OrbitLaw(benchmark::State& state)
{
    auto const side = static_cast<int>(state.range(0));
    CounterRng rng{5, 0};
    auto const base = gen_matrix_field(side, side, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_orbit_law(base, {1, 1}).atoms);
}
BENCHMARK(BM_OrbitLaw)->Arg(4)->Arg(6);

}  // namespace
}  // namespace sojourn_lab

BENCHMARK_MAIN();
