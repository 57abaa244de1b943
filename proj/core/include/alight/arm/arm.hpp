#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <vector>

#include "alight/core/camera.hpp"
#include "alight/core/mailbox.hpp"
#include "alight/core/pixel.hpp"

namespace alight::arm {

struct ArmConfig {
    double ppm_min = 1000.0;
    double ppm_max = 2000.0;
    /// Largest PPM change per control tick, microseconds.
    double delta_max = 40.0;
    double smoothing_beta = 0.35;
    /// A joint within this distance of its setpoint snaps onto it.
    double snap_tolerance = 0.5;
    /// Servo angle spanned across [ppm_min, ppm_max], radians.
    double pan_min = -35.0 * std::numbers::pi / 180.0;
    double pan_max = 35.0 * std::numbers::pi / 180.0;
    double tilt_min = -30.0 * std::numbers::pi / 180.0;
    double tilt_max = 30.0 * std::numbers::pi / 180.0;

    double ppm_centre() const { return 0.5 * (ppm_min + ppm_max); }
    void validate() const;
};

/// J1 = pan (base rotation), J2 = tilt.
struct JointState {
    double ppm_j1 = 1500.0;
    double ppm_j2 = 1500.0;

    friend bool operator==(const JointState&, const JointState&) = default;
};

struct PpmTarget {
    double ppm_j1 = 1500.0;
    double ppm_j2 = 1500.0;
    /// The pixel lay outside the image and was clamped.
    bool clamped = false;
};

struct JointAngles {
    double pan = 0.0;
    double tilt = 0.0;
};

/// Linear map with image corners on the PPM bounds.
PpmTarget pixel_to_ppm(const PixelPoint& pixel, const CameraModel& camera, const ArmConfig& config);

/// One control tick of proportional smoothing with symmetric saturation.
JointState step(const JointState& current, const PpmTarget& target, const ArmConfig& config);

JointAngles ppm_to_angles(const JointState& state, const ArmConfig& config);

struct TraceRow {
    std::int64_t tick = 0;
    double target_ppm_j1 = 0.0;
    double target_ppm_j2 = 0.0;
    JointState state;
    JointAngles angles;
};

/// Joint state evolving once per high-rate tick toward the newest setpoint
/// posted to its mailbox.
class ArmController {
public:
    explicit ArmController(ArmConfig config, JointState initial = {});

    /// Callable from any thread; only the latest setpoint is retained.
    void post_target(const PpmTarget& target) { mailbox_.post(target); }

    /// Consumes the mailbox and advances one tick. Returns the new state.
    const JointState& tick(std::int64_t index);

    const JointState& state() const { return state_; }
    JointAngles angles() const { return ppm_to_angles(state_, config_); }
    const PpmTarget& target() const { return target_; }
    const ArmConfig& config() const { return config_; }
    const std::vector<TraceRow>& trace() const { return trace_; }
    std::size_t dropped_setpoints() const { return mailbox_.dropped(); }

private:
    ArmConfig config_;
    JointState state_;
    PpmTarget target_;
    LatestValueMailbox<PpmTarget> mailbox_;
    std::vector<TraceRow> trace_;
};

/// CSV: tick,target_ppm_j1,target_ppm_j2,ppm_j1,ppm_j2,pan_rad,tilt_rad
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);
void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& trace);

}  // namespace alight::arm
