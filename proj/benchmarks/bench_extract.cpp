#include <storyboard/atg.hpp>
#include <storyboard/bundle.hpp>

#include <benchmark/benchmark.h>

using namespace storyboard;

static std::filesystem::path bundle_dir(const char* name)
{
    return std::filesystem::path(STORYBOARD_FIXTURES) / "bundles" / name;
}

static void BM_LoadBundle(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(load_bundle(bundle_dir("demo")));
    }
}
BENCHMARK(BM_LoadBundle)->Unit(benchmark::kMicrosecond);

static void BM_ExtractTransitions(benchmark::State& state)
{
    auto b = load_bundle(bundle_dir("activity_fragment_1"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(extract_transitions(b));
    }
}
BENCHMARK(BM_ExtractTransitions)->Unit(benchmark::kMicrosecond);
