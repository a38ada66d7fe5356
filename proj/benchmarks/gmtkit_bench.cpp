#include <gmtkit/gmtkit.hpp>

#include <benchmark/benchmark.h>

using namespace gmt;

static void BM_GenerateSn(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gen_Sn(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GenerateSn)->Arg(4)->Arg(16)->Arg(32);

static void BM_FlatNormQn(benchmark::State& state) {
  const auto m = gen_Qn(static_cast<int>(state.range(0)));
  const Mod2Chain a = to_mod2(m.varifold);
  for (auto _ : state) benchmark::DoNotOptimize(flat_seminorm(a, m.fill, Window::all()));
}
BENCHMARK(BM_FlatNormQn)->Arg(2)->Arg(8)->Arg(16);

static void BM_FlatDistSn(benchmark::State& state) {
  const Family f = family("Sn");
  const auto m = f.member(static_cast<int>(state.range(0)));
  const Mod2Chain a = to_mod2(m.varifold), b = to_mod2(*f.limitVarifold);
  for (auto _ : state) benchmark::DoNotOptimize(flat_dist(a, b, m.fill, Window::all()));
}
BENCHMARK(BM_FlatDistSn)->Arg(2)->Arg(8)->Arg(32);

static void BM_BoundaryFlatSn(benchmark::State& state) {
  const auto m = gen_Sn(static_cast<int>(state.range(0)));
  const Mod2Chain bd = boundary(to_mod2(m.varifold));
  const ComplexPtr lower = lower_complex(*m.fill);
  for (auto _ : state) benchmark::DoNotOptimize(flat_seminorm(bd, lower, Window::all()));
}
BENCHMARK(BM_BoundaryFlatSn)->Arg(4)->Arg(32);

static void BM_BoundedLipschitz(benchmark::State& state) {
  const double d = 1.0 / static_cast<double>(state.range(0));
  const auto a = atoms(unit_interval_varifold(), d);
  const auto b = atoms(gen_parallel_pair(8).varifold, d);
  for (auto _ : state) benchmark::DoNotOptimize(bl_distance(a, b));
}
BENCHMARK(BM_BoundedLipschitz)->Arg(16)->Arg(64)->Arg(256);

static void BM_FirstVariationPolygon(benchmark::State& state) {
  const auto v = polygon_varifold(regular_polygon(static_cast<int>(state.range(0)), 1), true);
  for (auto _ : state) benchmark::DoNotOptimize(total_first_variation_W(v, Window::all()));
}
BENCHMARK(BM_FirstVariationPolygon)->Arg(64)->Arg(1024);

static void BM_Arrangement(benchmark::State& state) {
  std::vector<std::vector<Point>> soup;
  const int n = static_cast<int>(state.range(0));
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / n;
    soup.push_back({Point(t, 0, 0), Point(t, 1, 0)});
    soup.push_back({Point(0, t, 0), Point(1, t, 0)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(arrange(2, 1, soup));
}
BENCHMARK(BM_Arrangement)->Arg(8)->Arg(32);

static void BM_ShrinkingCircleFlow(benchmark::State& state) {
  const auto v = polygon_varifold(regular_polygon(static_cast<int>(state.range(0)), 1), true);
  for (auto _ : state) benchmark::DoNotOptimize(run(v, FlowParams{}));
}
BENCHMARK(BM_ShrinkingCircleFlow)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_VerifyPair(benchmark::State& state) {
  SequenceSpec s;
  s.family = "pair";
  s.indices = {4, 8, 16, 32, 64};
  for (auto _ : state) benchmark::DoNotOptimize(verify_mod2_theorem(s));
}
BENCHMARK(BM_VerifyPair)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
