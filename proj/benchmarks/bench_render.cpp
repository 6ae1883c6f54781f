#include <storyboard/bundle.hpp>
#include <storyboard/pipeline.hpp>

#include <benchmark/benchmark.h>

using namespace storyboard;

static const AppBundle& demo()
{
    static const AppBundle b = load_bundle(std::filesystem::path(STORYBOARD_FIXTURES) / "bundles" / "demo");
    return b;
}

static void BM_LayoutAndSvg(benchmark::State& state)
{
    const auto& b = demo();
    auto g = extract_transitions(b);
    Diagnostics d;
    auto tree = synthesize_static_layout("ArticleActivity", b, g, d);
    for (auto _ : state) {
        benchmark::DoNotOptimize(render_page(tree, RenderSpec{}, &b.resources));
    }
}
BENCHMARK(BM_LayoutAndSvg);

static void BM_Rasterize(benchmark::State& state)
{
    const auto& b = demo();
    auto g = extract_transitions(b);
    Diagnostics d;
    auto tree = synthesize_static_layout("ArticleActivity", b, g, d);
    auto boxes = measure_and_layout(tree, RenderSpec{}, &b.resources);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rasterize(boxes, RenderSpec{}));
    }
}
BENCHMARK(BM_Rasterize);

static void BM_PipelineDemo(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_pipeline(demo(), PipelineOptions{}, nullptr));
    }
}
BENCHMARK(BM_PipelineDemo)->Unit(benchmark::kMillisecond);
