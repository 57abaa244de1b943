#include "alight/core/pose.hpp"

#include <algorithm>
#include <cmath>

namespace alight {
namespace {

Eigen::Quaterniond canonical(Eigen::Quaterniond q) {
    q.normalize();
    return q;
}

// Hamilton product in scalar form; q̄·q cancels to an exact identity.
Eigen::Quaterniond multiply(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b) {
    return {a.w() * b.w() - a.x() * b.x() - a.y() * b.y() - a.z() * b.z(),
            (a.w() * b.x() + a.x() * b.w()) + (a.y() * b.z() - a.z() * b.y()),
            (a.w() * b.y() + a.y() * b.w()) + (a.z() * b.x() - a.x() * b.z()),
            (a.w() * b.z() + a.z() * b.w()) + (a.x() * b.y() - a.y() * b.x())};
}

}  // namespace

Pose Pose::from_translation(double x, double y, double z) {
    Pose p;
    p.translation = {x, y, z};
    return p;
}

Pose Pose::from_axis_angle(const Eigen::Vector3d& axis, double angle,
                           const Eigen::Vector3d& translation) {
    Pose p;
    p.rotation = canonical(Eigen::Quaterniond(Eigen::AngleAxisd(angle, axis.normalized())));
    p.translation = translation;
    return p;
}

Pose Pose::from_rotation_matrix(const Eigen::Matrix3d& rotation,
                                const Eigen::Vector3d& translation) {
    Pose p;
    p.rotation = canonical(Eigen::Quaterniond(rotation));
    p.translation = translation;
    return p;
}

Pose Pose::from_rpy(double roll, double pitch, double yaw, const Eigen::Vector3d& translation) {
    const Eigen::Quaterniond q = Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()) *
                                 Eigen::AngleAxisd(pitch, Eigen::Vector3d::UnitY()) *
                                 Eigen::AngleAxisd(roll, Eigen::Vector3d::UnitX());
    Pose p;
    p.rotation = canonical(q);
    p.translation = translation;
    return p;
}

Eigen::Matrix4d Pose::matrix() const {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m.topLeftCorner<3, 3>() = rotation_matrix();
    m.topRightCorner<3, 1>() = translation;
    return m;
}

Pose compose(const Pose& a, const Pose& b) {
    Pose out;
    out.rotation = canonical(multiply(a.rotation, b.rotation));
    out.translation = a.rotation * b.translation + a.translation;
    return out;
}

Pose inverse(const Pose& p) {
    Pose out;
    out.rotation = p.rotation.conjugate();
    out.translation = -(out.rotation * p.translation);
    return out;
}

Pose relative_pose(const Pose& a, const Pose& b) { return compose(inverse(b), a); }

double rotation_angle(const Eigen::Quaterniond& q) {
    // 2·atan2(|v|, |w|) stays accurate near both 0 and π; |w| folds q and -q.
    return 2.0 * std::atan2(q.vec().norm(), std::abs(q.w()));
}

double rotation_angle(const Pose& p) { return rotation_angle(p.rotation); }

double translation_norm(const Pose& p) { return p.translation.norm(); }

Pose interpolate(const Pose& a, const Pose& b, double s) {
    if (s <= 0.0) return a;
    if (s >= 1.0) return b;
    Pose out;
    out.translation = (1.0 - s) * a.translation + s * b.translation;
    out.rotation = canonical(a.rotation.slerp(s, b.rotation));
    return out;
}

}  // namespace alight
