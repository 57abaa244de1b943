#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "alight/arm/arm.hpp"
#include "alight/core/trajectory.hpp"
#include "alight/eval/metrics.hpp"
#include "alight/odom/odometry.hpp"
#include "alight/pipeline/config.hpp"
#include "alight/sim/scenario_io.hpp"

namespace alight::pipeline {

/// Events of one high-rate tick. A pure function of index and config.
struct Tick {
    std::int64_t index = 0;
    double time = 0.0;  ///< seconds since episode start
    bool render = true;
    bool odometry = true;
    bool focus = false;
};

/// Focus fires on tick 0 and whenever sim time crosses a multiple of T_s.
Tick schedule_tick(std::int64_t index, const PipelineConfig& config);

struct FocusEvent {
    std::int64_t tick = 0;
    double time = 0.0;
    std::size_t keypoints = 0;
    std::size_t centroids = 0;
    std::optional<PixelPoint> target;
    double score = 0.0;
    std::optional<arm::PpmTarget> setpoint;
};

struct EpisodeStats {
    std::size_t ticks = 0;
    std::size_t focus_events = 0;
    std::size_t odom_frames = 0;
    std::size_t enhanced_frames_to_odom = 0;
    std::size_t lost_emissions = 0;
    std::size_t enhancer_substitutions = 0;
    std::size_t dropped_setpoints = 0;
};

struct EpisodeResult {
    Mode mode = Mode::AL;
    std::string scene_name;
    eval::EpisodeReport report;
    Trajectory gt{{}, TrajectoryKind::GroundTruth};
    Trajectory est{{}, TrajectoryKind::Estimate};
    std::vector<arm::TraceRow> arm_trace;
    std::vector<FocusEvent> focus_events;
    /// One entry per tick.
    std::vector<odom::TrackResult> tracking;
    EpisodeStats stats;
};

/// Observer for raw frames (frame dumps, instrumentation).
using FrameSink = std::function<void(const Frame& raw, const Tick& tick)>;

/// Lockstep closed loop: per tick sample GT, aim the beam from the arm state,
/// render, track, run the focus stream when scheduled, step the arm.
EpisodeResult run_episode(const PipelineConfig& config, const sim::Scenario& scenario, const FrameSink& sink = {});
/// Loads config.scene_path first.
EpisodeResult run_episode(const PipelineConfig& config);

/// gt.tum, est.tum, report.csv, errors.csv, summary.json, arm_trace.csv,
/// focus.csv, tracking.csv.
void write_episode(const EpisodeResult& result, const std::filesystem::path& dir);

/// Writes raw frames as NNNNNN.pgm plus NNNNNN_depth.f32 into dir.
FrameSink frame_dump_sink(const std::filesystem::path& dir);

struct ComparisonRow {
    Mode mode = Mode::AL;
    eval::EpisodeReport report;
};

/// Runs each mode with identical seed and scene.
std::vector<ComparisonRow> compare_modes(const PipelineConfig& base, std::span<const Mode> modes,
                                         const sim::Scenario& scenario);
std::vector<ComparisonRow> compare_modes(const PipelineConfig& base, std::span<const Mode> modes);

/// CSV: mode,ate_rmse,are_rmse,r_t,t_lost
void write_comparison_csv(std::ostream& out, std::span<const ComparisonRow> rows);

/// Free-running variant: the focus stream runs on a worker thread fed through
/// latest-value mailboxes; stale frames are dropped and the high-rate loop
/// never waits. Not deterministic.
EpisodeResult run_episode_concurrent(const PipelineConfig& config, const sim::Scenario& scenario);

}  // namespace alight::pipeline
