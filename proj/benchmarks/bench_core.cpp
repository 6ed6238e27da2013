#include "tset/circle_dynamics.hpp"
#include "tset/classifier.hpp"
#include "tset/finite_group.hpp"
#include "tset/random_sets.hpp"
#include "tset/rng.hpp"
#include "tset/torus_set.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace tset;

void bm_difference_set(benchmark::State& state) {
    FiniteAbelianGroup g({static_cast<long long>(state.range(0))});
    SplitMix64 rng(7);
    GroupSubset a = uniform_subset(rng, g, 1, 4);
    GroupSubset b = uniform_subset(rng, g, 1, 4);
    for (auto _ : state) {
        GroupSubset d = difference_set(a, b);
        benchmark::DoNotOptimize(d.size());
    }
}
BENCHMARK(bm_difference_set)->Arg(128)->Arg(1024);

void bm_stabilizer(benchmark::State& state) {
    FiniteAbelianGroup g({static_cast<long long>(state.range(0))});
    SplitMix64 rng(11);
    GroupSubset d = difference_set(coset_perturbed_subset(rng, g, 2),
                                   coset_perturbed_subset(rng, g, 2));
    for (auto _ : state) {
        Subgroup h = stabilizer(d);
        benchmark::DoNotOptimize(h.size());
    }
}
BENCHMARK(bm_stabilizer)->Arg(128)->Arg(1024);

void bm_orbit_walker_step(benchmark::State& state) {
    Angle alpha = Angle::parse("-1+1*sqrt(2)");
    std::vector<QuadVal> pool;
    IntervalUnion set = IntervalUnion::from_pieces({{QuadVal(0), QuadVal(Rat(3, 10))}});
    CompiledMembership membership = CompiledMembership::from_half_open(set, pool);
    OrbitWalker walker(alpha, QuadVal(0), pool);
    long long hits = 0;
    for (auto _ : state) {
        walker.step();
        hits += membership.test(walker) ? 1 : 0;
    }
    benchmark::DoNotOptimize(hits);
}
BENCHMARK(bm_orbit_walker_step);

void bm_detect_period(benchmark::State& state) {
    long long window = 20000;
    IntegerWindowSet set(window);
    for (long long g = -window; g <= window; ++g) {
        long long r = ((g % 12) + 12) % 12;
        if (r == 0 || r == 1 || r == 11) set.insert(g);
    }
    for (auto _ : state) {
        PeriodResult res = detect_period(set, 500);
        benchmark::DoNotOptimize(res.period);
    }
}
BENCHMARK(bm_detect_period);

void bm_minkowski_difference(benchmark::State& state) {
    IntervalUnion a = IntervalUnion::from_pieces({
        {QuadVal(Rat(0)), QuadVal(Rat(1, 10))},
        {QuadVal(Rat(3, 10)), QuadVal(Rat(2, 5))},
        {QuadVal(Rat(7, 10)), QuadVal(Rat(4, 5))},
    });
    IntervalUnion b = IntervalUnion::from_pieces({
        {QuadVal(Rat(1, 5)), QuadVal(Rat(3, 10))},
        {QuadVal(Rat(1, 2)), QuadVal(Rat(3, 5))},
    });
    for (auto _ : state) {
        IntervalUnion d = minkowski_difference(a, b);
        benchmark::DoNotOptimize(d.pieces().size());
    }
}
BENCHMARK(bm_minkowski_difference);

} // namespace

BENCHMARK_MAIN();
