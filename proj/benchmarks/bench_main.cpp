#include <benchmark/benchmark.h>

#include "norden/cli/runner.hpp"
#include "norden/hypersurface/induced.hpp"
#include "norden/rtl/rtl.hpp"
#include "norden/scenarios/scenarios.hpp"

using namespace norden;

namespace {

std::vector<Vec<double>> points(const Scene<double>& s, std::size_t count) {
  SamplerConfig cfg;
  cfg.count = count;
  return sample_points(s, cfg);
}

void BM_FrameExact(benchmark::State& st) {
  Scene<Rational> s = build_example_62();
  auto ctx = lightlike_context(s);
  Vec<Rational> x(4);
  for (auto _ : st) benchmark::DoNotOptimize(build_frame(ctx, x));
}
BENCHMARK(BM_FrameExact);

void BM_FrameFloat(benchmark::State& st) {
  Scene<double> s = build_example_61(static_cast<std::size_t>(st.range(0)));
  auto ctx = lightlike_context(s);
  auto pts = points(s, 64);
  std::size_t i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(build_frame(ctx, pts[i++ % pts.size()]));
}
BENCHMARK(BM_FrameFloat)->Arg(1)->Arg(2)->Arg(3);

void BM_InducedObjects(benchmark::State& st) {
  Scene<double> s = build_example_61(static_cast<std::size_t>(st.range(0)));
  auto ctx = lightlike_context(s);
  auto pts = points(s, 64);
  std::size_t i = 0;
  for (auto _ : st) {
    LocalFrame<double> lf = local_frame(ctx, pts[i++ % pts.size()]);
    benchmark::DoNotOptimize(induced_objects(ctx, lf));
  }
}
BENCHMARK(BM_InducedObjects)->Arg(1)->Arg(2)->Arg(3);

void BM_InducedRicci(benchmark::State& st) {
  Scene<double> s = build_example_61(static_cast<std::size_t>(st.range(0)));
  auto ctx = lightlike_context(s);
  auto pts = points(s, 16);
  std::size_t i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(induced_ricci(ctx, pts[i++ % pts.size()]));
}
BENCHMARK(BM_InducedRicci)->Arg(1)->Arg(2);

void BM_Sampler(benchmark::State& st) {
  Scene<double> s = build_example_61(2);
  for (auto _ : st) benchmark::DoNotOptimize(points(s, 100));
}
BENCHMARK(BM_Sampler);

void BM_Manifest(benchmark::State& st, nlohmann::json j) {
  Manifest m = parse_manifest(j);
  for (auto _ : st) benchmark::DoNotOptimize(run_manifest(m));
}
BENCHMARK_CAPTURE(BM_Manifest, example_62, nlohmann::json{{"scene", "example_62"}});
BENCHMARK_CAPTURE(BM_Manifest, example_61_all, nlohmann::json{{"scene", "example_61"}, {"points", 100}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Manifest, example_61_ricci,
                  nlohmann::json{{"scene", "example_61"}, {"points", 100}, {"suites", {"ricci"}}})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
