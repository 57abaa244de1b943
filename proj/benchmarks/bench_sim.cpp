#include <benchmark/benchmark.h>

#include "alight/sim/renderer.hpp"
#include "alight/sim/scenario_io.hpp"
#include "alight/sim/trajectory_script.hpp"

using namespace alight;

static void BM_RenderCorridor(benchmark::State& state) {
    const auto scn = sim::load_scenario(std::string(ALIGHT_DATA_DIR) + "/scenes/corridor_L1.json");
    const Pose robot = sim::sample_ground_truth(scn.trajectory, 1.0);
    sim::RenderOptions o;
    o.supersample = static_cast<int>(state.range(0));
    std::int64_t i = 0;
    for (auto _ : state) {
        o.noise_seed = ++i;
        benchmark::DoNotOptimize(sim::render(scn.scene, scn.rig, robot, {0.1, -0.05}, CameraModel{}, o));
    }
}
BENCHMARK(BM_RenderCorridor)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
