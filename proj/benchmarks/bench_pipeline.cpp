#include <benchmark/benchmark.h>

#include "alight/pipeline/config.hpp"
#include "alight/pipeline/episode.hpp"
#include "alight/sim/scenario_io.hpp"

using namespace alight;

// Thirty ticks of the closed loop in each mode; one focus event per 15 ticks.
static void BM_EpisodeTicks(benchmark::State& state) {
    auto config = pipeline::load_config(std::string(ALIGHT_DATA_DIR) + "/configs/corridor_L1.json");
    config.mode = static_cast<pipeline::Mode>(state.range(0));
    config.duration = 1.0;
    const auto scenario = sim::load_scenario(config.scene_path);
    for (auto _ : state) benchmark::DoNotOptimize(pipeline::run_episode(config, scenario));
    state.SetItemsProcessed(state.iterations() * config.tick_count());
}
BENCHMARK(BM_EpisodeTicks)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
