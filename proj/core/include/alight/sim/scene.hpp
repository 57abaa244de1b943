#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "alight/core/pose.hpp"
#include "alight/sim/texture.hpp"

namespace alight::sim {

inline constexpr double deg(double degrees) { return degrees * std::numbers::pi / 180.0; }

/// Planar rectangle. `pose` maps surface-local coordinates into the world;
/// the patch spans u ∈ [-width/2, width/2] along local x and
/// v ∈ [-height/2, height/2] along local y, with normal along local z.
struct Surface {
    std::string name;
    Pose pose;
    double width = 1.0;
    double height = 1.0;
    double base_albedo = 0.5;
    /// Later entries take precedence where regions overlap.
    std::vector<AlbedoTexture> textures;

    double albedo_at(double u, double v) const;
    void validate() const;
};

/// Cone-beam spotlight emitting along the +x axis of its pose.
struct SpotLight {
    double power = 20.0;
    double cone_full_angle = deg(30.0);
    double edge_softness = deg(3.0);

    /// Angular weight in [0, 1]: 1 inside the half-angle, smooth falloff to 0
    /// over `edge_softness` beyond it.
    double cone_weight(double off_axis_angle) const;
    void validate() const;
};

struct Scene {
    std::string name;
    std::vector<Surface> surfaces;
    /// Uniform irradiance everywhere (0 = total darkness).
    double ambient = 0.0;
    /// Uniform irradiance used for the building-lights-on baseline.
    double lit_ambient = 0.6;
    double noise_sigma = 2.0;
    std::uint64_t rng_seed = 0;
    SpotLight spot;

    void validate() const;
};

/// Sensor and light mounting on the robot body.
struct Rig {
    Pose camera_extrinsic;
    Pose arm_base_extrinsic;
    /// Servo mounting orientation: joint angle = direction · servo angle.
    double pan_direction = 1.0;
    double tilt_direction = 1.0;
    double pan_min = -deg(35.0), pan_max = deg(35.0);
    double tilt_min = -deg(30.0), tilt_max = deg(30.0);
};

}  // namespace alight::sim
