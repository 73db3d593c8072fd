#include <benchmark/benchmark.h>

#include "mwtl/corpus.hpp"
#include "mwtl/littlewood_paley.hpp"
#include "mwtl/norms.hpp"
#include "mwtl/weights.hpp"

namespace {

using namespace mwtl;

SampledField member(int level) {
    TorusGrid g(1, level);
    CorpusSpec spec;
    return corpus_member(g, 2, spec, 0);
}

void BM_fft_forward(benchmark::State& state) {
    SampledField f = member(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fft_forward(f));
}
BENCHMARK(BM_fft_forward)->Arg(8)->Arg(10);

void BM_hl_maximal(benchmark::State& state) {
    TorusGrid g(1, static_cast<int>(state.range(0)));
    RealField h(g);
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = double(i % 17);
    for (auto _ : state) benchmark::DoNotOptimize(hl_maximal(h));
}
BENCHMARK(BM_hl_maximal)->Arg(8)->Arg(10);

void BM_norm_F(benchmark::State& state) {
    int level = static_cast<int>(state.range(0));
    TorusGrid g(1, level);
    SampledField f = member(level);
    MatrixWeightField w = generate_weight(WeightSpec{}, g, 2);
    AnalysisProfile profile = make_profile(0.5, 2.0, 2, 5, g);
    SpaceParams params = SpaceParams::with_defaults(0.0, 2.0, 2.0, g.n, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(norm_F(f, w, params, profile));
}
BENCHMARK(BM_norm_F)->Arg(8);

void BM_ap_characteristic(benchmark::State& state) {
    TorusGrid g(1, static_cast<int>(state.range(0)));
    WeightSpec spec;
    spec.kind = WeightSpec::Kind::diagonal_power;
    spec.exponents = {0.5, 0.0};
    MatrixWeightField w = generate_weight(spec, g, 2);
    for (auto _ : state) benchmark::DoNotOptimize(ap_characteristic(w, 2.0));
}
BENCHMARK(BM_ap_characteristic)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
