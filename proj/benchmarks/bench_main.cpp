#include <benchmark/benchmark.h>

#include "strata/chains.hpp"
#include "strata/delpezzo.hpp"
#include "strata/homalg.hpp"
#include "strata/stability.hpp"
#include "strata/types.hpp"

using namespace strata;

static void BM_Saturate(benchmark::State& state) {
  auto L = build_blowup_poset(static_cast<int>(state.range(0)), 3).lattice;
  std::vector<int> d(L->size(), 0);
  for (int i = 1; i <= state.range(0); ++i) d[static_cast<std::size_t>(i)] = i + 1;
  DepthFunction g(L, d);
  for (auto _ : state) benchmark::DoNotOptimize(saturate(g));
}
BENCHMARK(BM_Saturate)->Arg(2)->Arg(4)->Arg(8);

static void BM_ChainCatalog(benchmark::State& state) {
  auto L = build_blowup_poset(3, 3).lattice;
  for (auto _ : state) {
    ChainCatalog cat(L, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(cat.size());
  }
}
BENCHMARK(BM_ChainCatalog)->Arg(3)->Arg(5)->Arg(7);

static void BM_MuStalkTwoPoint(benchmark::State& state) {
  auto L = build_blowup_poset(3, 3).lattice;
  ChainCatalog cat(L, 4);
  auto w = cat.index_of(parse_word(L, "1*l1"));
  auto x = cat.index_of(parse_word(L, "1*l1+1*0"));
  for (auto _ : state) benchmark::DoNotOptimize(mu_stalk(cat, {w, w}, {x, x}));
}
BENCHMARK(BM_MuStalkTwoPoint);

static void BM_SaturatedOrder(benchmark::State& state) {
  auto L = build_blowup_poset(static_cast<int>(state.range(0)), 3).lattice;
  auto U = enumerate_saturated_types(L, TypeBounds{2, 2, LowerRange::any}, TypeFlavor::absolute, false);
  for (auto _ : state) {
    SaturatedOrder O(U);
    benchmark::DoNotOptimize(O.antisymmetry_violation());
  }
}
BENCHMARK(BM_SaturatedOrder)->Arg(1)->Arg(2)->Arg(3);

static void BM_Certify(benchmark::State& state) {
  CurveContext c;
  c.degree = state.range(0);
  c.n = {2, 2, 2};
  auto s = stability_range(c);
  for (auto _ : state) {
    auto P = build_P(c, s.I, PFlavor::plain, UniverseBounds{2, 3});
    benchmark::DoNotOptimize(P.certify().passed);
  }
}
BENCHMARK(BM_Certify)->Arg(7)->Arg(11)->Unit(benchmark::kMillisecond);

static void BM_NAlpha(benchmark::State& state) {
  auto sample = random_ample_classes(1, 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(n_alpha(sample[i++ % sample.size()]));
}
BENCHMARK(BM_NAlpha);
BENCHMARK_MAIN();
