#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "alight/core/camera.hpp"
#include "alight/sim/renderer.hpp"
#include "alight/sim/scenario_io.hpp"
#include "alight/sim/trajectory_script.hpp"
#include "oracles.hpp"

using namespace alight;
using namespace alight::sim;
constexpr double kPi = std::numbers::pi;

namespace {

// Camera at the origin looking down +z; a 6 m square wall facing it at z = d.
Scene wall_scene(double d, double albedo = 1.0) {
    Scene s;
    s.name = "wall";
    Surface w;
    w.name = "wall";
    w.pose = Pose::from_translation(0, 0, d);
    w.width = 6.0;
    w.height = 6.0;
    w.base_albedo = albedo;
    s.surfaces.push_back(w);
    s.ambient = 0.0;
    s.noise_sigma = 0.0;
    s.spot.power = 2.0;
    return s;
}

// Beam emits along its +x; this points it down the camera axis.
Pose beam_along_z(double yaw = 0.0) {
    return compose(Pose::from_axis_angle(Eigen::Vector3d::UnitY(), -kPi / 2),
                   Pose::from_axis_angle(Eigen::Vector3d::UnitZ(), yaw));
}

}  // namespace

TEST(Render, DarkSceneIsBlack) {
    Scene s = wall_scene(2.0);
    s.spot.power = 0.0;
    const Frame f = render(s, Pose::identity(), beam_along_z(), CameraModel{}, {});
    for (auto v : f.intensity.pixels()) ASSERT_EQ(v, 0);
}

TEST(Render, OnAxisWallIntensity) {
    const Scene s = wall_scene(2.0);
    const CameraModel cam;
    const Frame f = render(s, Pose::identity(), beam_along_z(), cam, {});
    const int v = f.intensity.at(static_cast<int>(cam.cx), static_cast<int>(cam.cy));
    EXPECT_NEAR(v, 128, 1);
    const Pose beam = beam_along_z();
    EXPECT_NEAR(irradiance(s, {0, 0, 2}, {0, 0, -1}, &beam, 0.0), 0.5, 1e-12);
}

TEST(Render, OutsideConeIsNoiseFloor) {
    Scene s = wall_scene(2.0);
    s.noise_sigma = 2.0;
    const CameraModel cam;
    RenderOptions o;
    o.noise_seed = 5;
    const Frame f = render(s, Pose::identity(), beam_along_z(), cam, o);
    const Eigen::Vector3d axis = beam_along_z().rotation * Eigen::Vector3d::UnitX();
    const double limit = 0.5 * s.spot.cone_full_angle + s.spot.edge_softness;
    int outside = 0;
    for (int y = 0; y < cam.height; ++y)
        for (int x = 0; x < cam.width; ++x) {
            const Eigen::Vector3d p = unproject(cam, {double(x), double(y)}, f.depth->at(x, y));
            if (std::acos(axis.dot(p.normalized())) <= limit) continue;
            ++outside;
            ASSERT_LE(f.intensity.at(x, y), 5 * s.noise_sigma);
        }
    EXPECT_GT(outside, 1000);
}

TEST(Render, EnergyLocalityUnderPanAndSupersampling) {
    Scene s = wall_scene(1.5, 0.8);
    s.noise_sigma = 1.0;
    const CameraModel cam;
    RenderOptions o;
    o.supersample = 3;
    o.noise_seed = 11;
    const Pose beam = beam_along_z(0.25);
    const Frame f = render(s, Pose::identity(), beam, cam, o);
    const Eigen::Vector3d axis = beam.rotation * Eigen::Vector3d::UnitX();
    // A pixel footprint spans atan(1/fx) on each side of its centre ray.
    const double limit = 0.5 * s.spot.cone_full_angle + s.spot.edge_softness + std::atan(1.0 / cam.fx);
    int lit = 0;
    for (int y = 0; y < cam.height; ++y)
        for (int x = 0; x < cam.width; ++x) {
            if (f.intensity.at(x, y) <= 5 * s.noise_sigma) continue;
            ++lit;
            const Eigen::Vector3d p = unproject(cam, {double(x), double(y)}, f.depth->at(x, y));
            ASSERT_LE(std::acos(axis.dot(p.normalized())), limit) << x << "," << y;
        }
    EXPECT_GT(lit, 100);
}

TEST(Render, NoLightBoundedByNoiseFloor) {
    Scene s = wall_scene(2.0);
    s.noise_sigma = 2.0;
    RenderOptions o;
    o.spot_enabled = false;
    o.noise_seed = 9;
    const Frame f = render(s, Pose::identity(), beam_along_z(), CameraModel{}, o);
    for (auto v : f.intensity.pixels()) ASSERT_LE(v, 10);
}

TEST(Render, PowerMonotonicity) {
    Scene s = wall_scene(2.0, 0.3);
    s.ambient = 0.02;
    s.spot.power = 0.0;
    Frame prev = render(s, Pose::identity(), beam_along_z(0.1), CameraModel{}, {});
    for (double p : {0.5, 1.0, 3.0, 8.0}) {
        s.spot.power = p;
        const Frame f = render(s, Pose::identity(), beam_along_z(0.1), CameraModel{}, {});
        for (std::size_t i = 0; i < f.intensity.size(); ++i) ASSERT_GE(f.intensity.pixels()[i], prev.intensity.pixels()[i]);
        prev = f;
    }
}

TEST(Render, DeterministicAndSeedSensitive) {
    Scene s = wall_scene(2.0, 0.5);
    s.noise_sigma = 2.0;
    RenderOptions o;
    o.noise_seed = 3;
    o.frame_index = 17;
    const Frame a = render(s, Pose::identity(), beam_along_z(), CameraModel{}, o);
    const Frame b = render(s, Pose::identity(), beam_along_z(), CameraModel{}, o);
    EXPECT_EQ(a.intensity, b.intensity);
    o.frame_index = 18;
    const Frame c = render(s, Pose::identity(), beam_along_z(), CameraModel{}, o);
    EXPECT_NE(a.intensity, c.intensity);
}

TEST(Render, DepthIsCameraZAndConsistent) {
    const auto scenario = load_scenario(oracle::data_dir() / "scenes" / "corridor_L1.json");
    const CameraModel cam;
    const Pose robot = sample_ground_truth(scenario.trajectory, 3.0);
    const Pose camera_pose = compose(robot, scenario.rig.camera_extrinsic);
    RenderOptions o;
    o.spot_enabled = false;
    o.ambient = 0.6;
    const Frame f = render(scenario.scene, scenario.rig, robot, {}, cam, o);
    int checked = 0;
    for (int y = 0; y < cam.height; y += 7)
        for (int x = 0; x < cam.width; x += 7) {
            const float d = f.depth->at(x, y);
            if (std::isnan(d)) continue;
            const Eigen::Vector3d pc = unproject(cam, {double(x), double(y)}, d);
            const Eigen::Vector3d pw = camera_pose.apply(pc);
            const Eigen::Vector3d dir = (pw - camera_pose.translation).normalized();
            const auto hit = intersect(scenario.scene, camera_pose.translation, dir);
            ASSERT_TRUE(hit);
            ASSERT_LT((hit->point - pw).norm(), 1e-6);
            ++checked;
        }
    EXPECT_GT(checked, 500);
}

TEST(Render, MissesHaveNoDepth) {
    const Scene s = wall_scene(2.0);
    const Frame f = render(s, Pose::from_axis_angle(Eigen::Vector3d::UnitX(), kPi), beam_along_z(), CameraModel{}, {});
    for (auto d : f.depth->pixels()) ASSERT_TRUE(std::isnan(d));
}

TEST(Spot, ConeWeight) {
    SpotLight spot;
    EXPECT_EQ(spot.cone_weight(0.0), 1.0);
    EXPECT_EQ(spot.cone_weight(0.5 * spot.cone_full_angle), 1.0);
    EXPECT_EQ(spot.cone_weight(0.5 * spot.cone_full_angle + spot.edge_softness + 1e-9), 0.0);
    double prev = 1.0;
    for (int i = 0; i <= 20; ++i) {
        const double w = spot.cone_weight(0.5 * spot.cone_full_angle + spot.edge_softness * i / 20.0);
        EXPECT_LE(w, prev);
        prev = w;
    }
}

TEST(Beam, ZeroAnglesFollowBase) {
    const Pose base = Pose::from_translation(0.1, 0, 1.2);
    const auto r = beam_pose(Pose::identity(), base, {0, 0});
    EXPECT_FALSE(r.clamped);
    EXPECT_LT((r.pose.rotation * Eigen::Vector3d::UnitX() - Eigen::Vector3d::UnitX()).norm(), 1e-15);
    EXPECT_LT((r.pose.translation - base.translation).norm(), 1e-15);
}

TEST(Beam, PanQuarterTurn) {
    const auto r = beam_pose(Pose::identity(), Pose::identity(), {kPi / 2, 0});
    const Eigen::Vector3d d = r.pose.rotation * Eigen::Vector3d::UnitX();
    EXPECT_NEAR(d.y(), 1.0, 1e-12);
}

TEST(Beam, MatchesMatrixProduct) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> a(-1.2, 1.2);
    for (int i = 0; i < 200; ++i) {
        const Pose robot = oracle::random_pose(rng), base = oracle::random_pose(rng, 0.5);
        const double pan = a(rng), tilt = a(rng);
        const Eigen::Matrix4d expect = oracle::to_matrix(robot) * oracle::to_matrix(base) *
                                       oracle::homogeneous(oracle::rodrigues(Eigen::Vector3d::UnitZ(), pan), {0, 0, 0}) *
                                       oracle::homogeneous(oracle::rodrigues(Eigen::Vector3d::UnitY(), tilt), {0, 0, 0});
        const auto r = beam_pose(robot, base, {pan, tilt});
        EXPECT_LT((oracle::to_matrix(r.pose) - expect).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Beam, ClampsAndFlags) {
    const auto r = beam_pose(Pose::identity(), Pose::identity(), {2.0, -0.1}, {-1, -1}, {1, 1});
    EXPECT_TRUE(r.clamped);
    EXPECT_EQ(r.applied.pan, 1.0);
    EXPECT_EQ(r.applied.tilt, -0.1);
}

TEST(GroundTruth, Interpolation) {
    TrajectoryScript s;
    s.samples = {{0.0, Pose::identity()},
                 {2.0, Pose::from_axis_angle(Eigen::Vector3d::UnitZ(), kPi / 2, Eigen::Vector3d(2, 0, 0))}};
    const Pose m = sample_ground_truth(s, 1.0);
    EXPECT_NEAR(m.translation.x(), 1.0, 1e-12);
    EXPECT_NEAR(rotation_angle(m), kPi / 4, 1e-12);
    const Pose end = sample_ground_truth(s, 2.0);
    EXPECT_EQ(end.translation.x(), 2.0);
    EXPECT_THROW(sample_ground_truth(s, -0.01), OutOfRangeError);
    EXPECT_THROW(sample_ground_truth(s, 2.01), OutOfRangeError);
}

TEST(Texture, CheckerboardAndDeterminism) {
    AlbedoTexture t;
    t.kind = AlbedoTexture::Kind::Checkerboard;
    t.region = {0, 0, 1, 1};
    t.cell = 0.25;
    EXPECT_EQ(t.evaluate(0.1, 0.1), t.high);
    EXPECT_EQ(t.evaluate(0.3, 0.1), t.low);
    EXPECT_EQ(t.evaluate(0.3, 0.3), t.high);

    AlbedoTexture n;
    n.kind = AlbedoTexture::Kind::NoisePatch;
    n.region = {0, 0, 2, 2};
    n.seed = 99;
    n.cell = 0.1;
    AlbedoTexture m = n;
    m.seed = 100;
    int differ = 0;
    for (int i = 0; i < 100; ++i) {
        const double u = 0.013 * i, v = 0.017 * i;
        EXPECT_EQ(n.evaluate(u, v), n.evaluate(u, v));
        differ += n.evaluate(u, v) != m.evaluate(u, v);
        n.smooth = true;
        const double s = n.evaluate(u, v);
        EXPECT_GE(s, n.low);
        EXPECT_LE(s, n.high);
        n.smooth = false;
    }
    EXPECT_GT(differ, 10);
}

TEST(Texture, SmoothNoiseHitsLatticeAtCellCentres) {
    AlbedoTexture n;
    n.kind = AlbedoTexture::Kind::NoisePatch;
    n.region = {0, 0, 2, 2};
    n.cell = 0.2;
    n.seed = 4;
    AlbedoTexture hard = n;
    n.smooth = true;
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) {
            const double u = (i + 0.5) * n.cell, v = (j + 0.5) * n.cell;
            EXPECT_NEAR(n.evaluate(u, v), hard.evaluate(u, v), 1e-12);
        }
}

TEST(Texture, Validation) {
    AlbedoTexture t;
    t.region = {0, 0, 1, 1};
    t.value = 1.5;
    EXPECT_THROW(t.validate(), InvalidInputError);
    t.value = 0.5;
    t.region = {0, 0, 0, 1};
    EXPECT_THROW(t.validate(), InvalidInputError);
}

TEST(ScenarioIo, BundledPresetsLoad) {
    for (const char* name : {"corridor_L1", "corridor_L2", "corridor_R", "room_R", "room_static", "dim_checkerboard"}) {
        const auto s = load_scenario(oracle::data_dir() / "scenes" / (std::string(name) + ".json"));
        EXPECT_EQ(s.scene.name, name);
        EXPECT_FALSE(s.scene.surfaces.empty());
        EXPECT_GT(s.trajectory.end_time(), s.trajectory.start_time());
    }
}

TEST(ScenarioIo, RejectsBadFiles) {
    EXPECT_THROW(parse_scenario("{"), ConfigError);
    EXPECT_THROW(parse_scenario(R"({"format":"other","version":1})"), ConfigError);
    EXPECT_THROW(parse_scenario(R"({"format":"alight-scene","version":99})"), ConfigError);
    const std::string bad_texture = R"({"format":"alight-scene","version":1,
        "surfaces":[{"center":[0,0,0],"u_axis":[1,0,0],"v_axis":[0,1,0],"width":1,"height":1,
                     "textures":[{"kind":"plaid"}]}],
        "trajectory":[{"t":0,"position":[0,0,0]},{"t":1,"position":[1,0,0]}]})";
    EXPECT_THROW(parse_scenario(bad_texture), ConfigError);
    const std::string backwards = R"({"format":"alight-scene","version":1,"surfaces":[],
        "trajectory":[{"t":1,"position":[0,0,0]},{"t":0,"position":[1,0,0]}]})";
    EXPECT_THROW(parse_scenario(backwards), ConfigError);
}
