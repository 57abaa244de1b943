#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "alight/arm/arm.hpp"
#include "alight/core/camera.hpp"
#include "alight/enhance/enhancer.hpp"
#include "alight/focus/focus_block.hpp"
#include "alight/odom/odometry.hpp"

namespace alight::pipeline {

/// AL: active light steered by the focus stream. FL: light held at the image
/// centre. LO: building lights on, spotlight off.
enum class Mode { AL, FL, LO };

std::string to_string(Mode mode);
/// Accepts "AL", "FL", "LO" (case-insensitive). Throws ConfigError.
Mode parse_mode(const std::string& text);

struct EnhancerSpec {
    enum class Kind { Classical, External };
    Kind kind = Kind::Classical;
    enhance::ClassicalEnhancerConfig classical;
    enhance::ExternalCommand external;
};

struct PipelineConfig {
    double fps_h = 30.0;
    /// Low-rate resampler period T_s, seconds (FPS_l = 1 / T_s).
    double resample_period = 0.5;
    Mode mode = Mode::AL;
    focus::TsmParams tsm;
    focus::ClusterParams cluster;
    focus::DetectorParams focus_detector{.threshold = 300.0};
    arm::ArmConfig arm;
    EnhancerSpec enhancer;
    std::filesystem::path scene_path;
    std::uint64_t seed = 1;
    double duration = 20.0;
    CameraModel camera = CameraModel::desk_default();
    odom::OdomConfig odom;
    int supersample = 2;
    double max_dt = 0.02;

    std::int64_t tick_count() const;
    /// Throws ConfigError.
    void validate() const;
};

/// Parses the JSON config format; relative scene paths resolve against base_dir.
PipelineConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
PipelineConfig load_config(const std::filesystem::path& path);
/// Serialises every field (the file format's documented defaults when
/// called on a default-constructed config).
std::string config_to_json(const PipelineConfig& config);

}  // namespace alight::pipeline
