#pragma once

#include "alight/core/pixel.hpp"

#include <Eigen/Core>

namespace alight {

/// Pinhole camera without distortion. Camera frame: x right, y down, z forward.
struct CameraModel {
    int width = 212;
    int height = 200;
    double fx = 150.0;
    double fy = 150.0;
    double cx = 106.0;
    double cy = 100.0;
    double fps_h = 30.0;
    double exposure_gain = 1.0;

    /// Quarter-resolution camera used by the bundled scenes.
    static CameraModel desk_default() { return {}; }
    /// 848×800 camera with the same field of view as desk_default().
    static CameraModel full_resolution();

    /// Same field of view, resolution multiplied by `factor`.
    CameraModel scaled(double factor) const;

    /// Throws InvalidInputError when any field violates its bounds.
    void validate() const;

    bool contains(const PixelPoint& p) const {
        return p.x >= 0.0 && p.y >= 0.0 && p.x < width && p.y < height;
    }
};

/// Throws InvalidInputError for points with z <= 0.
PixelPoint project(const CameraModel& camera, const Eigen::Vector3d& point);

/// Back-projects a pixel at the given camera-frame depth (z, meters).
Eigen::Vector3d unproject(const CameraModel& camera, const PixelPoint& pixel, double depth);

/// Unit-z ray direction through a pixel in the camera frame, (x', y', 1).
Eigen::Vector3d pixel_ray(const CameraModel& camera, double x, double y);

}  // namespace alight
