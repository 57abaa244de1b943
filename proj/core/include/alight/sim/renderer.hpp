#pragma once

#include <cstdint>
#include <numbers>
#include <optional>

#include "alight/core/camera.hpp"
#include "alight/core/frame.hpp"
#include "alight/core/pose.hpp"
#include "alight/sim/scene.hpp"

namespace alight::sim {

struct BeamAngles {
    double pan = 0.0;
    double tilt = 0.0;
};

struct BeamPoseResult {
    Pose pose;
    BeamAngles applied;
    bool clamped = false;
};

/// robot ∘ arm_base ∘ Rz(pan) ∘ Ry(tilt). The beam points along +x of the
/// result. Angles outside [min, max] are clamped and flagged.
BeamPoseResult beam_pose(const Pose& robot_pose, const Pose& arm_base, BeamAngles joints,
                         BeamAngles min = {-std::numbers::pi, -std::numbers::pi},
                         BeamAngles max = {std::numbers::pi, std::numbers::pi});

/// Beam pose for servo angles, applying the rig's mounting directions and limits.
BeamPoseResult rig_beam_pose(const Rig& rig, const Pose& robot_pose, BeamAngles servo);

struct RenderOptions {
    std::int64_t frame_index = 0;
    double timestamp = 0.0;
    bool spot_enabled = true;
    /// Overrides Scene::ambient when set.
    std::optional<double> ambient;
    /// Sub-samples per pixel side for the radiance (depth uses the centre ray).
    int supersample = 1;
    std::uint64_t noise_seed = 0;
};

struct RayHit {
    double distance = 0.0;
    Eigen::Vector3d point;
    Eigen::Vector3d normal;
    const Surface* surface = nullptr;
    double albedo = 0.0;
};

/// Nearest intersection along origin + s·direction, s > 0.
std::optional<RayHit> intersect(const Scene& scene, const Eigen::Vector3d& origin,
                                const Eigen::Vector3d& direction);

/// Irradiance at a surface point with the given normal (world frame).
double irradiance(const Scene& scene, const Eigen::Vector3d& point, const Eigen::Vector3d& normal,
                  const Pose* beam, double ambient);

/// Renders a frame seen by a camera at `camera_pose` (camera → world) with the
/// spotlight at `beam_world`. Depth is camera-frame z of the centre-ray hit.
Frame render(const Scene& scene, const Pose& camera_pose, const Pose& beam_world,
             const CameraModel& camera, const RenderOptions& options);

/// Convenience form resolving the camera and beam through the rig.
Frame render(const Scene& scene, const Rig& rig, const Pose& robot_pose, BeamAngles servo,
             const CameraModel& camera, const RenderOptions& options);

}  // namespace alight::sim
