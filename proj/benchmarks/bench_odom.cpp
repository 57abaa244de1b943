#include <benchmark/benchmark.h>

#include <random>

#include "alight/odom/odometry.hpp"

using namespace alight;

static void BM_EstimateRigid(benchmark::State& state) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2, 2), z(1, 5);
    const Pose t = Pose::from_axis_angle({0.2, 1, 0.1}, 0.3, {0.1, 0.0, 0.2});
    std::vector<PointPair> pairs;
    const auto n = static_cast<int>(state.range(0));
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector3d p(u(rng), u(rng), z(rng));
        Eigen::Vector3d q = t.rotation * p + t.translation;
        if (i % 4 == 0) q += Eigen::Vector3d(u(rng), u(rng), u(rng));
        pairs.emplace_back(p, q);
    }
    for (auto _ : state) benchmark::DoNotOptimize(odom::estimate_rigid(pairs));
}
BENCHMARK(BM_EstimateRigid)->Arg(30)->Arg(150)->Arg(300)->Unit(benchmark::kMicrosecond);
