#include "alight/core/camera.hpp"

#include <cmath>
#include <string>

#include "alight/core/errors.hpp"

namespace alight {

CameraModel CameraModel::full_resolution() { return desk_default().scaled(4.0); }

CameraModel CameraModel::scaled(double factor) const {
    if (!(factor > 0.0)) throw InvalidInputError("camera scale factor must be positive");
    CameraModel c = *this;
    c.width = static_cast<int>(std::lround(width * factor));
    c.height = static_cast<int>(std::lround(height * factor));
    c.fx = fx * factor;
    c.fy = fy * factor;
    c.cx = cx * factor;
    c.cy = cy * factor;
    return c;
}

void CameraModel::validate() const {
    if (width < 16 || height < 16)
        throw InvalidInputError("camera resolution must be at least 16x16");
    if (!(fx > 0.0) || !(fy > 0.0)) throw InvalidInputError("focal lengths must be positive");
    if (!(cx >= 0.0 && cx < width) || !(cy >= 0.0 && cy < height))
        throw InvalidInputError("principal point must lie inside the image");
    if (!(fps_h > 0.0)) throw InvalidInputError("camera frame rate must be positive");
    if (!(exposure_gain >= 0.0)) throw InvalidInputError("exposure gain must be non-negative");
}

PixelPoint project(const CameraModel& camera, const Eigen::Vector3d& point) {
    if (!(point.z() > 0.0))
        throw InvalidInputError("cannot project a point with non-positive depth");
    return {camera.fx * point.x() / point.z() + camera.cx,
            camera.fy * point.y() / point.z() + camera.cy};
}

Eigen::Vector3d unproject(const CameraModel& camera, const PixelPoint& pixel, double depth) {
    if (!(depth > 0.0)) throw InvalidInputError("cannot unproject with non-positive depth");
    return pixel_ray(camera, pixel.x, pixel.y) * depth;
}

Eigen::Vector3d pixel_ray(const CameraModel& camera, double x, double y) {
    return {(x - camera.cx) / camera.fx, (y - camera.cy) / camera.fy, 1.0};
}

}  // namespace alight
