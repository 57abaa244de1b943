#include <atomic>
#include <chrono>
#include <thread>

#include "alight/core/mailbox.hpp"
#include "alight/core/rng.hpp"
#include "alight/enhance/enhancer.hpp"
#include "alight/focus/focus_block.hpp"
#include "alight/odom/odometry.hpp"
#include "alight/pipeline/episode.hpp"
#include "alight/sim/renderer.hpp"

namespace alight::pipeline {

namespace {

struct FocusJob {
    std::int64_t tick = 0;
    double time = 0.0;
    Frame frame;
};

}  // namespace

EpisodeResult run_episode_concurrent(const PipelineConfig& config, const sim::Scenario& scenario) {
    config.validate();
    scenario.scene.validate();
    scenario.trajectory.validate();

    const CameraModel& camera = config.camera;
    const sim::Rig& rig = scenario.rig;
    const double t0 = scenario.trajectory.start_time();
    const std::int64_t ticks = config.tick_count();
    if (t0 + static_cast<double>(ticks - 1) / config.fps_h > scenario.trajectory.end_time() + 1e-9)
        throw ConfigError("trajectory ends before the episode does; shorten duration_s");

    arm::ArmController arm(config.arm);
    LatestValueMailbox<FocusJob> jobs;
    std::atomic<bool> done{false};
    std::vector<FocusEvent> events;
    std::size_t substitutions = 0;

    std::thread worker;
    if (config.mode == Mode::AL) {
        worker = std::thread([&] {
            enhance::ClassicalEnhancer classical(config.enhancer.classical);
            std::unique_ptr<enhance::FallbackEnhancer> external;
            if (config.enhancer.kind == EnhancerSpec::Kind::External)
                external = std::make_unique<enhance::FallbackEnhancer>(
                    std::make_unique<enhance::ExternalEnhancer>(config.enhancer.external),
                    std::make_unique<enhance::ClassicalEnhancer>(config.enhancer.classical));
            focus::FocusBlock block({config.focus_detector, config.cluster, config.tsm});
            while (true) {
                auto job = jobs.take();
                if (!job) {
                    if (done.load()) break;
                    std::this_thread::sleep_for(std::chrono::microseconds(200));
                    continue;
                }
                const Frame enhanced = external ? external->enhance(job->frame) : classical.enhance(job->frame);
                const auto out = block.process(enhanced);
                FocusEvent ev{job->tick, job->time, out.keypoints.size(), out.centroids.size(), {}, 0.0, {}};
                if (out.selection) {
                    ev.target = out.selection->target;
                    ev.score = out.selection->score;
                    ev.setpoint = arm::pixel_to_ppm(out.selection->target, camera, config.arm);
                    arm.post_target(*ev.setpoint);
                }
                events.push_back(ev);
            }
            if (external) substitutions = external->substitutions();
        });
    }

    odom::OdomConfig odom_config = config.odom;
    odom_config.ransac.seed = hash_combine(config.seed, 0x0d0e);
    odom::Tracker tracker(camera, odom_config,
                          compose(sim::sample_ground_truth(scenario.trajectory, t0), rig.camera_extrinsic));
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
        Frame raw = sim::render(scenario.scene, rig, robot, {servo.pan, servo.tilt}, camera, options);
        if (tick.focus) {
            ++result.stats.focus_events;
            if (config.mode == Mode::AL) jobs.post({i, stamp, raw});
        }
        const auto tr = tracker.track(raw);
        result.tracking.push_back(tr);
        result.gt.samples.push_back({stamp, robot});
        result.est.samples.push_back({stamp, compose(tr.pose, camera_to_body)});
        arm.tick(i);
    }
    done.store(true);
    if (worker.joinable()) worker.join();

    result.focus_events = std::move(events);
    result.stats.ticks = static_cast<std::size_t>(ticks);
    result.stats.odom_frames = tracker.frames_consumed();
    result.stats.enhanced_frames_to_odom = tracker.enhanced_frames_seen();
    result.stats.lost_emissions = tracker.lost_emissions();
    result.stats.enhancer_substitutions = substitutions;
    result.stats.dropped_setpoints = arm.dropped_setpoints() + jobs.dropped();
    result.arm_trace = arm.trace();
    eval::EvaluateOptions eo;
    eo.max_dt = config.max_dt;
    result.report = eval::evaluate(result.gt, result.est, tracker.state().t_lost, eo);
    return result;
}

}  // namespace alight::pipeline
