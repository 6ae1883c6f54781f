#include <storyboard/layout_tree.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace storyboard;

static LayoutTree random_tree(std::mt19937& rng, int nodes)
{
    static const char* vocab[] = {"LinearLayout", "FrameLayout", "TextView",
                                  "Button",       "ImageView",   "EditText"};
    std::uniform_int_distribution<int> label(0, 5);
    LayoutTree root{vocab[label(rng)], {}};
    std::vector<LayoutTree*> all{&root};
    for (int i = 1; i < nodes; ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
        auto* parent = all[pick(rng)];
        parent->children.push_back({vocab[label(rng)], {}});
        // Pointers into children vectors go stale on growth; rebuild.
        all.clear();
        std::vector<LayoutTree*> stack{&root};
        while (!stack.empty()) {
            auto* t = stack.back();
            stack.pop_back();
            all.push_back(t);
            for (auto& c : t->children) {
                stack.push_back(&c);
            }
        }
    }
    return root;
}

static void BM_TreeEditDistance(benchmark::State& state)
{
    std::mt19937 rng(1);
    auto a = random_tree(rng, int(state.range(0)));
    auto b = random_tree(rng, int(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(tree_edit_distance(a, b));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TreeEditDistance)->RangeMultiplier(2)->Range(8, 256)->Complexity();

static void BM_ParseTree(benchmark::State& state)
{
    std::mt19937 rng(2);
    auto text = format_tree(random_tree(rng, 200));
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_tree(text));
    }
}
BENCHMARK(BM_ParseTree);
