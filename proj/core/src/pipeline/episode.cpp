#include "alight/pipeline/episode.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

#include "alight/core/image_io.hpp"
#include "alight/core/rng.hpp"
#include "alight/enhance/enhancer.hpp"
#include "alight/focus/focus_block.hpp"
#include "alight/odom/odometry.hpp"
#include "alight/sim/renderer.hpp"

namespace alight::pipeline {
namespace {

std::int64_t resample_bucket(std::int64_t index, const PipelineConfig& config) {
    return static_cast<std::int64_t>(std::floor(static_cast<double>(index) / (config.fps_h * config.resample_period) + 1e-9));
}

std::unique_ptr<enhance::EnhancerPort> make_enhancer(const EnhancerSpec& spec) {
    auto classical = std::make_unique<enhance::ClassicalEnhancer>(spec.classical);
    if (spec.kind == EnhancerSpec::Kind::Classical) return classical;
    return std::make_unique<enhance::FallbackEnhancer>(
        std::make_unique<enhance::ExternalEnhancer>(spec.external), std::move(classical),
        [](const std::string& msg) { std::cerr << "alight: enhancer fallback: " << msg << '\n'; });
}

focus::FocusParams focus_params(const PipelineConfig& config) {
    focus::FocusParams p;
    p.detector = config.focus_detector;
    p.cluster = config.cluster;
    p.tsm = config.tsm;
    return p;
}

void check_duration(const PipelineConfig& config, const sim::TrajectoryScript& script) {
    const double needed = script.start_time() + static_cast<double>(config.tick_count() - 1) / config.fps_h;
    if (config.tick_count() < 2) throw ConfigError("episode needs at least two ticks");
    if (needed > script.end_time() + 1e-9)
        throw ConfigError("trajectory ends before the episode does; shorten duration_s");
}

}  // namespace

Tick schedule_tick(std::int64_t index, const PipelineConfig& config) {
    if (index < 0) throw InvalidInputError("tick index must be non-negative");
    Tick t;
    t.index = index;
    t.time = static_cast<double>(index) / config.fps_h;
    t.focus = index == 0 || resample_bucket(index, config) != resample_bucket(index - 1, config);
    return t;
}

EpisodeResult run_episode(const PipelineConfig& config, const sim::Scenario& scenario, const FrameSink& sink) {
    config.validate();
    scenario.scene.validate();
    scenario.trajectory.validate();
    check_duration(config, scenario.trajectory);

    const CameraModel& camera = config.camera;
    const sim::Rig& rig = scenario.rig;
    const double t0 = scenario.trajectory.start_time();
    const std::int64_t ticks = config.tick_count();

    auto enhancer = make_enhancer(config.enhancer);
    auto* fallback = dynamic_cast<enhance::FallbackEnhancer*>(enhancer.get());
    focus::FocusBlock focus_block(focus_params(config));
    arm::ArmController arm(config.arm);

    odom::OdomConfig odom_config = config.odom;
    odom_config.ransac.seed = hash_combine(config.seed, 0x0d0e);
    const Pose initial_camera = compose(sim::sample_ground_truth(scenario.trajectory, t0), rig.camera_extrinsic);
    odom::Tracker tracker(camera, odom_config, initial_camera);
    const Pose camera_to_body = inverse(rig.camera_extrinsic);

    EpisodeResult result;
    result.mode = config.mode;
    result.scene_name = scenario.scene.name;

    sim::RenderOptions options;
    options.supersample = config.supersample;
    options.noise_seed = hash_combine(config.seed, scenario.scene.rng_seed);
    if (config.mode == Mode::LO) {
        options.spot_enabled = false;
        options.ambient = scenario.scene.lit_ambient;
    }

    for (std::int64_t i = 0; i < ticks; ++i) {
        const Tick tick = schedule_tick(i, config);
        const double stamp = t0 + tick.time;
        const Pose robot = sim::sample_ground_truth(scenario.trajectory, stamp);

        const arm::JointAngles servo = arm.angles();
        options.frame_index = i;
        options.timestamp = stamp;
        const Frame raw = sim::render(scenario.scene, rig, robot, {servo.pan, servo.tilt}, camera, options);
        if (sink) sink(raw, tick);

        const odom::TrackResult tr = tracker.track(raw);
        result.tracking.push_back(tr);
        result.gt.samples.push_back({stamp, robot});
        result.est.samples.push_back({stamp, compose(tr.pose, camera_to_body)});

        if (tick.focus) {
            ++result.stats.focus_events;
            if (config.mode == Mode::AL) {
                const Frame enhanced = enhancer->enhance(raw);
                const focus::FocusOutput out = focus_block.process(enhanced);
                FocusEvent ev{i, stamp, out.keypoints.size(), out.centroids.size(), {}, 0.0, {}};
                if (out.selection) {
                    ev.target = out.selection->target;
                    ev.score = out.selection->score;
                    ev.setpoint = arm::pixel_to_ppm(out.selection->target, camera, config.arm);
                    arm.post_target(*ev.setpoint);
                }
                result.focus_events.push_back(ev);
            } else {
                result.focus_events.push_back({i, stamp, 0, 0, {}, 0.0, {}});
            }
        }
        arm.tick(i);
    }

    result.stats.ticks = static_cast<std::size_t>(ticks);
    result.stats.odom_frames = tracker.frames_consumed();
    result.stats.enhanced_frames_to_odom = tracker.enhanced_frames_seen();
    result.stats.lost_emissions = tracker.lost_emissions();
    result.stats.enhancer_substitutions = fallback ? fallback->substitutions() : 0;
    result.stats.dropped_setpoints = arm.dropped_setpoints();
    result.arm_trace = arm.trace();

    eval::EvaluateOptions eo;
    eo.max_dt = config.max_dt;
    result.report = eval::evaluate(result.gt, result.est, tracker.state().t_lost, eo);
    return result;
}

EpisodeResult run_episode(const PipelineConfig& config) {
    return run_episode(config, sim::load_scenario(config.scene_path));
}

namespace {

const char* status_name(odom::TrackStatus s) {
    switch (s) {
        case odom::TrackStatus::Initialized: return "initialized";
        case odom::TrackStatus::Tracked: return "tracked";
        case odom::TrackStatus::Lost: return "lost";
    }
    return "?";
}

}  // namespace

void write_episode(const EpisodeResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_tum(dir / "gt.tum", result.gt);
    write_tum(dir / "est.tum", result.est);
    eval::write_report_csv(dir / "report.csv", result.report);
    eval::write_errors_csv(dir / "errors.csv", result.report);
    eval::write_summary_json(dir / "summary.json", result.report,
                             {{"mode", to_string(result.mode)},
                              {"scene", result.scene_name},
                              {"focus_events", std::to_string(result.stats.focus_events)},
                              {"lost_emissions", std::to_string(result.stats.lost_emissions)},
                              {"enhancer_substitutions", std::to_string(result.stats.enhancer_substitutions)}});
    arm::write_trace_csv(dir / "arm_trace.csv", result.arm_trace);

    std::ofstream focus(dir / "focus.csv");
    if (!focus) throw IoError("cannot write " + (dir / "focus.csv").string());
    focus << "tick,time,keypoints,centroids,target_x,target_y,score,ppm_j1,ppm_j2\n";
    char line[256];
    for (const auto& ev : result.focus_events) {
        const double nan = std::nan("");
        std::snprintf(line, sizeof line, "%lld,%.6f,%zu,%zu,%.4f,%.4f,%.9f,%.3f,%.3f\n",
                      static_cast<long long>(ev.tick), ev.time, ev.keypoints, ev.centroids,
                      ev.target ? ev.target->x : nan, ev.target ? ev.target->y : nan, ev.score,
                      ev.setpoint ? ev.setpoint->ppm_j1 : nan, ev.setpoint ? ev.setpoint->ppm_j2 : nan);
        focus << line;
    }

    std::ofstream tracking(dir / "tracking.csv");
    if (!tracking) throw IoError("cannot write " + (dir / "tracking.csv").string());
    tracking << "tick,status,keypoints,matches,inliers\n";
    for (std::size_t i = 0; i < result.tracking.size(); ++i) {
        const auto& t = result.tracking[i];
        tracking << i << ',' << status_name(t.status) << ',' << t.keypoints << ',' << t.matches << ',' << t.inliers
                 << '\n';
    }
}

FrameSink frame_dump_sink(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    return [dir](const Frame& raw, const Tick& tick) {
        char name[32];
        std::snprintf(name, sizeof name, "%06lld", static_cast<long long>(tick.index));
        write_pgm(dir / (std::string(name) + ".pgm"), raw.intensity);
        if (raw.depth) write_depth_raw(dir / (std::string(name) + "_depth.f32"), *raw.depth);
    };
}

std::vector<ComparisonRow> compare_modes(const PipelineConfig& base, std::span<const Mode> modes,
                                         const sim::Scenario& scenario) {
    std::vector<ComparisonRow> rows;
    for (Mode m : modes) {
        PipelineConfig c = base;
        c.mode = m;
        rows.push_back({m, run_episode(c, scenario).report});
    }
    return rows;
}

std::vector<ComparisonRow> compare_modes(const PipelineConfig& base, std::span<const Mode> modes) {
    return compare_modes(base, modes, sim::load_scenario(base.scene_path));
}

void write_comparison_csv(std::ostream& out, std::span<const ComparisonRow> rows) {
    out << "mode,ate_rmse,are_rmse,r_t,t_lost\n";
    char line[256];
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%s,%.17g,%.17g,%.17g,%zu\n", to_string(r.mode).c_str(), r.report.ate_rmse,
                      r.report.are_rmse, r.report.r_t, r.report.t_lost);
        out << line;
    }
}

}  // namespace alight::pipeline
