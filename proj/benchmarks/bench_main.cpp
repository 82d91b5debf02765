#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "abscope/abscope.hpp"

using namespace abscope;

namespace {

TruthTable random_table(int m, std::mt19937_64& rng) {
    TruthTable f{m, std::vector<std::uint8_t>(std::size_t{1} << m)};
    for (auto& b : f.bits) b = static_cast<std::uint8_t>(rng() & 1);
    return f;
}

void BM_WhtInplace(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    std::mt19937_64 rng(1);
    std::vector<std::int32_t> base(std::size_t{1} << m);
    for (auto& v : base) v = (rng() & 1) ? -1 : 1;
    std::vector<std::int32_t> work(base.size());
    for (auto _ : state) {
        work = base;
        wht_inplace(work);
        benchmark::DoNotOptimize(work.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WhtInplace)->DenseRange(10, 20, 2);

void BM_WalshFast(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const Field field = Field::make(m);
    std::mt19937_64 rng(2);
    const TruthTable f = random_table(m, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(walsh_fast(f, field).coeffs.data());
    }
}
BENCHMARK(BM_WalshFast)->DenseRange(10, 18, 4);

void BM_FieldBuild(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Field::make(m).zeta());
    }
}
BENCHMARK(BM_FieldBuild)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

void BM_ClassifyAb(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const Field field = Field::make(m);
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify_ab(3, field).is_ab);
    }
}
BENCHMARK(BM_ClassifyAb)->Arg(7)->Arg(9)->Arg(11);

void BM_Codim2Profile(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const Field field = Field::make(m);
    for (auto _ : state) {
        benchmark::DoNotOptimize(codim2_profile(3, field).counts.size());
    }
}
BENCHMARK(BM_Codim2Profile)->Arg(7)->Arg(9);

void BM_TraceIdentityScan(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const Field field = Field::make(m);
    for (auto _ : state) {
        std::uint64_t holds = 0;
        for (std::uint64_t d = 3; d < field.order(); d += 2) {
            holds += trace_identity(d, field) ? 1 : 0;
        }
        benchmark::DoNotOptimize(holds);
    }
}
BENCHMARK(BM_TraceIdentityScan)->Arg(9)->Arg(11);

void BM_WitnessM23(benchmark::State& state) {
    const CyclicBitVector dbar = CyclicBitVector::from_exponent(166549, 23);
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_odd_witness(dbar).multiset_size);
    }
}
BENCHMARK(BM_WitnessM23);

} // namespace

BENCHMARK_MAIN();
