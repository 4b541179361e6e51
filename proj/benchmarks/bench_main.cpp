#include <benchmark/benchmark.h>

#include <random>

#include "fls/arrangement.hpp"
#include "fls/decomposition.hpp"
#include "fls/frobenius.hpp"
#include "fls/partition.hpp"

namespace {

using namespace fls;

// k copies of a generic rank-r linear matroid on n elements, plus U(1,n) last.
PartitionProblem random_problem(int n, int k, int r, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::vector<MatroidPtr> ms;
    for (int j = 0; j < k; ++j) {
        RationalMatrix rows(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(r)));
        for (auto& row : rows)
            for (auto& e : row) e = coeff(rng);
        ms.push_back(make_linear(rows));
    }
    ms.push_back(make_uniform(1, n));
    return PartitionProblem(std::move(ms));
}

ArrangementData lines(int n) {
    ArrangementData d;
    d.b.assign(static_cast<std::size_t>(n), {Rational(1)});
    d.basepoint = Point(n);
    for (int i = 0; i < n; ++i) {
        d.weights.emplace_back(1.0 + 0.25 * i, 0.0);
        d.basepoint(i) = Complex(static_cast<double>(i) * 1.7 - 2.0, 0.3 * (i % 2));
    }
    return d;
}

void BM_Partition(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto p = random_problem(n, 3, n / 4 + 1, 7);
    for (auto _ : state) benchmark::DoNotOptimize(solve_partition(p));
}
BENCHMARK(BM_Partition)->Arg(8)->Arg(16)->Arg(32)->Arg(48);

void BM_Equivalence(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SystemContext ctx(make_uniform(2, n), 2);
    std::vector<int> v(static_cast<std::size_t>(n), 1);
    v[0] = 2;
    const System t(v);
    for (auto _ : state) benchmark::DoNotOptimize(equivalence_report(ctx, t, MatchMode::unordered, {}));
}
BENCHMARK(BM_Equivalence)->Arg(4)->Arg(5)->Arg(6);

void BM_CriticalPoints(benchmark::State& state) {
    const auto d = lines(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(critical_points(d, d.basepoint));
}
BENCHMARK(BM_CriticalPoints)->Arg(3)->Arg(6)->Arg(12);

void BM_SecondKind(benchmark::State& state) {
    const auto d = lines(3);
    const int n_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        // fresh structure each round so the frame cache does not hide the solve cost
        const auto s = structure_from_arrangement(d, 2);
        benchmark::DoNotOptimize(build_second_kind(*s, n_max));
    }
}
BENCHMARK(BM_SecondKind)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
