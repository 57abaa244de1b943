#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace alight {

/// Rigid transform in SE(3). Maps points from the child frame into the parent
/// frame: p_parent = rotation * p_child + translation. The quaternion is kept
/// normalized by every operation that produces a Pose.
struct Pose {
    Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    static Pose identity() { return {}; }
    static Pose from_translation(double x, double y, double z);
    static Pose from_axis_angle(const Eigen::Vector3d& axis, double angle,
                                const Eigen::Vector3d& translation = Eigen::Vector3d::Zero());
    /// Builds a pose from an (approximately) orthonormal rotation matrix.
    static Pose from_rotation_matrix(const Eigen::Matrix3d& rotation,
                                     const Eigen::Vector3d& translation = Eigen::Vector3d::Zero());
    /// Roll/pitch/yaw in radians, R = Rz(yaw) * Ry(pitch) * Rx(roll).
    static Pose from_rpy(double roll, double pitch, double yaw,
                         const Eigen::Vector3d& translation = Eigen::Vector3d::Zero());

    Eigen::Matrix3d rotation_matrix() const { return rotation.toRotationMatrix(); }
    Eigen::Matrix4d matrix() const;

    Eigen::Vector3d apply(const Eigen::Vector3d& point) const {
        return rotation * point + translation;
    }
};

/// a ∘ b: first b, then a.
Pose compose(const Pose& a, const Pose& b);
Pose inverse(const Pose& p);

/// Returns E such that compose(b, E) == a, i.e. E = b⁻¹ ∘ a.
Pose relative_pose(const Pose& a, const Pose& b);

/// Geodesic rotation angle of p in [0, π].
double rotation_angle(const Pose& p);
double rotation_angle(const Eigen::Quaterniond& q);

double translation_norm(const Pose& p);

/// Linear interpolation of translation and slerp of rotation, s in [0, 1].
Pose interpolate(const Pose& a, const Pose& b, double s);

}  // namespace alight
