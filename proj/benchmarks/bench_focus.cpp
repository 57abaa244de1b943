#include <benchmark/benchmark.h>

#include <random>

#include "alight/enhance/enhancer.hpp"
#include "alight/focus/cluster.hpp"
#include "alight/focus/features.hpp"
#include "alight/focus/tsm.hpp"

using namespace alight;

namespace {

GrayImage noise_image(int w, int h) {
    GrayImage img(w, h);
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> v(0, 255);
    for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(v(rng));
    return img;
}

}  // namespace

static void BM_Detect(benchmark::State& state) {
    const GrayImage img = noise_image(212, 200);
    focus::DetectorParams p;
    p.max_keypoints = 300;
    for (auto _ : state) benchmark::DoNotOptimize(focus::detect_features(img, p));
}
BENCHMARK(BM_Detect)->Unit(benchmark::kMicrosecond);

static void BM_Cluster(benchmark::State& state) {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> x(0, 211), y(0, 199);
    std::vector<focus::Keypoint> kps(static_cast<std::size_t>(state.range(0)));
    for (auto& k : kps) k.position = {x(rng), y(rng)};
    for (auto _ : state) benchmark::DoNotOptimize(focus::cluster(kps, {}));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Cluster)->RangeMultiplier(4)->Range(16, 1024)->Complexity()->Unit(benchmark::kMicrosecond);

static void BM_SelectTarget(benchmark::State& state) {
    std::vector<focus::Centroid> c = {{{10, 20}, 8}, {{90, 40}, 15}, {{150, 150}, 30}, {{200, 10}, 5}};
    for (auto _ : state) {
        focus::FocusState s{PixelPoint{100, 100}};
        benchmark::DoNotOptimize(focus::select_target(c, s, {}));
    }
}
BENCHMARK(BM_SelectTarget);

static void BM_ClassicalEnhance(benchmark::State& state) {
    Frame f;
    f.intensity = noise_image(212, 200);
    for (auto _ : state) benchmark::DoNotOptimize(enhance::classical_enhance(f, {}));
}
BENCHMARK(BM_ClassicalEnhance)->Unit(benchmark::kMicrosecond);
