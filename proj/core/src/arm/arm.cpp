#include "alight/arm/arm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "alight/core/errors.hpp"

namespace alight::arm {
namespace {

double axis_to_ppm(double coord, int size, const ArmConfig& c) {
    return c.ppm_min + coord / (size - 1) * (c.ppm_max - c.ppm_min);
}

double ppm_to_range(double ppm, double lo, double hi, const ArmConfig& c) {
    return lo + (ppm - c.ppm_min) / (c.ppm_max - c.ppm_min) * (hi - lo);
}

double step_joint(double current, double target, const ArmConfig& c) {
    const double raw = c.smoothing_beta * (target - current);
    const double applied = std::clamp(raw, -c.delta_max, c.delta_max);
    double next = std::clamp(current + applied, c.ppm_min, c.ppm_max);
    if (std::abs(target - next) <= c.snap_tolerance && std::abs(target - current) <= c.delta_max)
        next = std::clamp(target, c.ppm_min, c.ppm_max);
    while (std::abs(next - current) > c.delta_max) next = std::nextafter(next, current);
    return next;
}

}  // namespace

void ArmConfig::validate() const {
    if (!(ppm_min < ppm_max)) throw InvalidInputError("ppm_min must be below ppm_max");
    if (!(delta_max > 0.0)) throw InvalidInputError("delta_max must be positive");
    if (!(smoothing_beta > 0.0 && smoothing_beta <= 1.0))
        throw InvalidInputError("smoothing_beta must lie in (0, 1]");
    if (!(snap_tolerance >= 0.0)) throw InvalidInputError("snap_tolerance must be non-negative");
    if (pan_min == pan_max || tilt_min == tilt_max) throw InvalidInputError("joint angle ranges must be nonzero");
}

PpmTarget pixel_to_ppm(const PixelPoint& pixel, const CameraModel& camera, const ArmConfig& config) {
    const double x = std::clamp(pixel.x, 0.0, camera.width - 1.0);
    const double y = std::clamp(pixel.y, 0.0, camera.height - 1.0);
    PpmTarget out;
    out.clamped = x != pixel.x || y != pixel.y;
    out.ppm_j1 = axis_to_ppm(x, camera.width, config);
    out.ppm_j2 = axis_to_ppm(y, camera.height, config);
    return out;
}

JointState step(const JointState& current, const PpmTarget& target, const ArmConfig& config) {
    return {step_joint(current.ppm_j1, target.ppm_j1, config), step_joint(current.ppm_j2, target.ppm_j2, config)};
}

JointAngles ppm_to_angles(const JointState& state, const ArmConfig& config) {
    return {ppm_to_range(state.ppm_j1, config.pan_min, config.pan_max, config),
            ppm_to_range(state.ppm_j2, config.tilt_min, config.tilt_max, config)};
}

ArmController::ArmController(ArmConfig config, JointState initial)
    : config_(config), state_(initial), target_{initial.ppm_j1, initial.ppm_j2, false} {
    config_.validate();
}

const JointState& ArmController::tick(std::int64_t index) {
    if (auto latest = mailbox_.take()) target_ = *latest;
    state_ = step(state_, target_, config_);
    trace_.push_back({index, target_.ppm_j1, target_.ppm_j2, state_, ppm_to_angles(state_, config_)});
    return state_;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
    out << "tick,target_ppm_j1,target_ppm_j2,ppm_j1,ppm_j2,pan_rad,tilt_rad\n";
    char line[256];
    for (const auto& r : trace) {
        std::snprintf(line, sizeof line, "%lld,%.6f,%.6f,%.6f,%.6f,%.9f,%.9f\n", static_cast<long long>(r.tick),
                      r.target_ppm_j1, r.target_ppm_j2, r.state.ppm_j1, r.state.ppm_j2, r.angles.pan,
                      r.angles.tilt);
        out << line;
    }
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& trace) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    write_trace_csv(out, trace);
}

}  // namespace alight::arm
