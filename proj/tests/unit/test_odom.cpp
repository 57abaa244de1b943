#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "alight/odom/odometry.hpp"
#include "alight/sim/renderer.hpp"
#include "alight/sim/scenario_io.hpp"
#include "alight/sim/trajectory_script.hpp"
#include "oracles.hpp"

using namespace alight;
using namespace alight::odom;

namespace {

GrayImage smooth_noise(int w, int h, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0, 255);
    std::vector<double> raw(static_cast<std::size_t>(w) * h);
    for (auto& v : raw) v = u(rng);
    GrayImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double s = 0;
            int n = 0;
            for (int dy = -2; dy <= 2; ++dy)
                for (int dx = -2; dx <= 2; ++dx) {
                    const int xx = std::clamp(x + dx, 0, w - 1), yy = std::clamp(y + dy, 0, h - 1);
                    s += raw[yy * w + xx];
                    ++n;
                }
            img.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::lround((s / n - 128) * 3 + 128), 0L, 255L));
        }
    return img;
}

GrayImage shifted(const GrayImage& src, int dx) {
    GrayImage out(src.width(), src.height());
    for (int y = 0; y < src.height(); ++y)
        for (int x = 0; x < src.width(); ++x) out.at(x, y) = src.at(std::clamp(x - dx, 0, src.width() - 1), y);
    return out;
}

std::vector<PointPair> transformed_cloud(const Pose& t, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2, 2), z(1, 5);
    const Eigen::Matrix4d m = oracle::to_matrix(t);
    std::vector<PointPair> out;
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector3d p(u(rng), u(rng), z(rng));
        out.emplace_back(p, (m * p.homogeneous()).head<3>());
    }
    return out;
}

double transform_gap(const Pose& a, const Pose& b) {
    return (oracle::to_matrix(a) - oracle::to_matrix(b)).cwiseAbs().maxCoeff();
}

struct LitCorridor {
    sim::Scenario scn = sim::load_scenario(oracle::data_dir() / "scenes" / "corridor_L1.json");
    CameraModel camera;

    Pose camera_pose(const Pose& robot) const { return compose(robot, scn.rig.camera_extrinsic); }

    Frame frame(const Pose& robot, std::int64_t index) const {
        sim::RenderOptions o;
        o.spot_enabled = false;
        o.ambient = scn.scene.lit_ambient;
        o.supersample = 2;
        o.frame_index = index;
        o.noise_seed = 100 + index;
        o.timestamp = index / 30.0;
        return sim::render(scn.scene, scn.rig, robot, {}, camera, o);
    }
};

}  // namespace

TEST(Match, IdenticalFramesScoreOne) {
    const GrayImage img = smooth_noise(160, 120, 1);
    const auto kps = focus::detect_features(img, OdomConfig{}.detector);
    ASSERT_GT(kps.size(), 30u);
    const auto m = match_features(img, kps, img, kps, {});
    EXPECT_GE(m.size(), kps.size() * 9 / 10);
    for (const auto& x : m) {
        EXPECT_NEAR(x.score, 1.0, 1e-9);
        EXPECT_NEAR(x.cur.x, x.prev.x, 0.05);
        EXPECT_NEAR(x.cur.y, x.prev.y, 0.05);
        EXPECT_EQ(x.prev_index, x.cur_index);
    }
}

TEST(Match, ShiftedFrameRecoversShift) {
    const GrayImage a = smooth_noise(160, 120, 2);
    const GrayImage b = shifted(a, 3);
    const auto ka = focus::detect_features(a, OdomConfig{}.detector);
    const auto m = match_features(a, ka, b, OdomConfig{}.detector, {});
    ASSERT_GT(m.size(), 20u);
    for (const auto& x : m) {
        EXPECT_NEAR(x.cur.x - x.prev.x, 3.0, 0.5);
        EXPECT_NEAR(x.cur.y - x.prev.y, 0.0, 0.5);
    }
}

TEST(Match, UnrelatedFramesGiveFewMatches) {
    const GrayImage a = smooth_noise(160, 120, 3), b = smooth_noise(160, 120, 4);
    const auto ka = focus::detect_features(a, OdomConfig{}.detector);
    const auto m = match_features(a, ka, b, OdomConfig{}.detector, {});
    EXPECT_LT(m.size(), ka.size() / 10 + 1);
}

TEST(Match, NccProperties) {
    const GrayImage a = smooth_noise(60, 60, 5);
    GrayImage inv(60, 60);
    for (int i = 0; i < 3600; ++i) inv.pixels()[i] = static_cast<std::uint8_t>(255 - a.pixels()[i]);
    EXPECT_NEAR(patch_ncc(a, {30, 30}, a, {30, 30}, 11), 1.0, 1e-12);
    EXPECT_NEAR(patch_ncc(a, {30, 30}, inv, {30, 30}, 11), -1.0, 1e-12);
    EXPECT_EQ(patch_ncc(GrayImage(60, 60, 7), {30, 30}, a, {30, 30}, 11), 0.0);
    EXPECT_EQ(patch_ncc(a, {2, 30}, a, {30, 30}, 11), 0.0);
}

TEST(Rigid, IdentityCloud) {
    const auto pairs = transformed_cloud(Pose::identity(), 20, 6);
    const auto est = estimate_rigid(pairs);
    EXPECT_LT(transform_gap(est.transform, Pose::identity()), 1e-9);
    EXPECT_EQ(est.inliers, 20u);
}

TEST(Rigid, KnownTransform) {
    const Pose t = Pose::from_axis_angle(Eigen::Vector3d::UnitZ(), std::numbers::pi / 6, {1, 0, 0});
    const auto est = estimate_rigid(transformed_cloud(t, 20, 7));
    EXPECT_LT(transform_gap(est.transform, t), 1e-9);
}

TEST(Rigid, OutliersRejected) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const Pose t = oracle::random_pose(rng, 1.0);
        auto pairs = transformed_cloud(t, 20, 100 + trial);
        std::uniform_real_distribution<double> u(-3, 3);
        for (int i = 0; i < 10; ++i)
            pairs.emplace_back(Eigen::Vector3d(u(rng), u(rng), 3 + u(rng)), Eigen::Vector3d(u(rng), u(rng), 3 + u(rng)));
        const auto est = estimate_rigid(pairs);
        EXPECT_LT(transform_gap(est.transform, t), 1e-6);
        EXPECT_EQ(est.inliers, 20u);
        for (int i = 0; i < 30; ++i) EXPECT_EQ(est.inlier_mask[i], i < 20);
    }
}

TEST(Rigid, Deterministic) {
    auto pairs = transformed_cloud(Pose::from_translation(0.2, 0, 0), 15, 9);
    pairs.emplace_back(Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(5, 5, 5));
    const auto a = estimate_rigid(pairs), b = estimate_rigid(pairs);
    EXPECT_EQ(oracle::to_matrix(a.transform), oracle::to_matrix(b.transform));
    EXPECT_EQ(a.inlier_mask, b.inlier_mask);
}

TEST(Rigid, Failures) {
    const auto few = transformed_cloud(Pose::identity(), 2, 10);
    EXPECT_THROW(estimate_rigid(few), EstimationFailure);
    std::vector<PointPair> line;
    for (int i = 0; i < 10; ++i) line.emplace_back(Eigen::Vector3d(i, 0, 2), Eigen::Vector3d(i, 0, 2));
    EXPECT_THROW(estimate_rigid(line), EstimationFailure);
}

TEST(Refine, NeverIncreasesCostAndRecoversTruth) {
    std::mt19937_64 rng(11);
    const Pose t = Pose::from_axis_angle(oracle::random_unit(rng), 0.05, {0.03, -0.02, 0.04});
    const auto pairs = transformed_cloud(t, 40, 12);
    const std::vector<bool> mask(pairs.size(), true);
    const Pose start = compose(Pose::from_translation(0.01, 0.0, -0.01), t);
    const Pose out = refine_alignment(start, pairs, mask, 150.0);
    EXPECT_LT(transform_gap(out, t), 1e-6);
    EXPECT_LT(transform_gap(refine_alignment(t, pairs, mask, 150.0), t), 1e-9);
    EXPECT_THROW(refine_alignment(t, pairs, std::vector<bool>(3, true), 150.0), InvalidInputError);
}

TEST(Depth, Sampling) {
    DepthImage d(4, 4, 2.0f);
    d.at(3, 3) = 0.0f;
    EXPECT_NEAR(*sample_depth(d, {1.5, 1.5}), 2.0, 1e-9);
    EXPECT_FALSE(sample_depth(d, {3, 3}).has_value());
    EXPECT_FALSE(sample_depth(d, {-1, 0}).has_value());
}

TEST(Track, MissingDepthThrows) {
    Frame f;
    f.intensity = smooth_noise(100, 100, 13);
    OdomState s;
    EXPECT_THROW(track(s, f, CameraModel{}, {}), ConfigError);
}

TEST(Track, IdenticalFramesGiveIdentityMotion) {
    const LitCorridor c;
    const Pose robot = sim::sample_ground_truth(c.scn.trajectory, 0.0);
    const Frame f = c.frame(robot, 0);
    Tracker t(c.camera, OdomConfig::for_camera(c.camera), c.camera_pose(robot));
    EXPECT_EQ(t.track(f).status, TrackStatus::Initialized);
    Frame again = f;
    again.timestamp += 1.0 / 30.0;
    const TrackResult r = t.track(again);
    EXPECT_EQ(r.status, TrackStatus::Tracked);
    EXPECT_LT(transform_gap(r.pose, c.camera_pose(robot)), 1e-6);
}

TEST(Track, ForwardStepInLitCorridor) {
    const LitCorridor c;
    const Pose robot = sim::sample_ground_truth(c.scn.trajectory, 0.0);
    const Pose moved = compose(robot, Pose::from_translation(0.05, 0, 0));
    Tracker t(c.camera, OdomConfig::for_camera(c.camera), c.camera_pose(robot));
    t.track(c.frame(robot, 0));
    const TrackResult r = t.track(c.frame(moved, 1));
    ASSERT_EQ(r.status, TrackStatus::Tracked);
    EXPECT_GE(r.inliers, 12u);
    const Eigen::Vector3d err = r.pose.translation - c.camera_pose(moved).translation;
    EXPECT_LT(err.norm(), 1e-3);
}

TEST(Track, LostCountMatchesStatus) {
    const LitCorridor c;
    Tracker t(c.camera, OdomConfig::for_camera(c.camera), Pose::identity());
    Frame flat;
    flat.intensity = GrayImage(c.camera.width, c.camera.height, 60);
    flat.depth = DepthImage(c.camera.width, c.camera.height, 2.0f);
    // Failures before the first successful track only replace the reference.
    EXPECT_EQ(t.track(flat).status, TrackStatus::Initialized);
    flat.timestamp = 0.5;
    EXPECT_EQ(t.track(flat).status, TrackStatus::Initialized);
    EXPECT_EQ(t.state().t_lost, 0u);

    const Pose robot = sim::sample_ground_truth(c.scn.trajectory, 0.0);
    const Frame lit = c.frame(robot, 0);
    std::size_t lost = 0;
    const std::vector<const Frame*> seq = {&lit, &lit, &flat, &flat, &lit, &lit, &flat, &lit};
    double stamp = 1.0;
    for (const Frame* f : seq) {
        Frame next = *f;
        next.timestamp = stamp += 0.1;
        const TrackResult r = t.track(next);
        if (r.status == TrackStatus::Lost) {
            ++lost;
            EXPECT_EQ(oracle::to_matrix(r.pose), oracle::to_matrix(t.state().pose));
        }
    }
    EXPECT_GE(lost, 3u);
    EXPECT_EQ(t.state().t_lost, lost);
    EXPECT_EQ(t.lost_emissions(), lost);
    EXPECT_EQ(t.frames_consumed(), seq.size() + 2);
}

TEST(Track, CountsEnhancedFrames) {
    Tracker t(CameraModel{}, {});
    Frame f;
    f.intensity = GrayImage(212, 200, 10);
    f.depth = DepthImage(212, 200, 1.0f);
    t.track(f);
    EXPECT_EQ(t.enhanced_frames_seen(), 0u);
    f.enhanced = true;
    f.timestamp = 1.0;
    t.track(f);
    EXPECT_EQ(t.enhanced_frames_seen(), 1u);
}
