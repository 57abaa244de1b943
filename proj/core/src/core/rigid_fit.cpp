#include "alight/core/rigid_fit.hpp"

#include <numeric>
#include <vector>

#include <Eigen/SVD>

#include "alight/core/errors.hpp"

namespace alight {

bool degenerate_configuration(std::span<const PointPair> pairs, std::span<const std::size_t> subset) {
    if (subset.size() < 3) return true;
    const Eigen::Vector3d& a = pairs[subset[0]].first;
    double scale = 0.0;
    for (std::size_t i : subset) scale = std::max(scale, (pairs[i].first - a).norm());
    if (scale < 1e-12) return true;
    // Largest distance from the line through a and the farthest point.
    std::size_t far = subset[0];
    for (std::size_t i : subset)
        if ((pairs[i].first - a).norm() > (pairs[far].first - a).norm()) far = i;
    const Eigen::Vector3d dir = (pairs[far].first - a).normalized();
    double off_line = 0.0;
    for (std::size_t i : subset) {
        const Eigen::Vector3d d = pairs[i].first - a;
        off_line = std::max(off_line, (d - dir * dir.dot(d)).norm());
    }
    return off_line < 1e-9 * scale;
}

Pose fit_rigid(std::span<const PointPair> pairs, std::span<const std::size_t> subset) {
    if (subset.size() < 3) throw InvalidInputError("rigid fit needs at least 3 correspondences");
    if (degenerate_configuration(pairs, subset))
        throw InvalidInputError("rigid fit on collinear or coincident points");

    Eigen::Vector3d mean_src = Eigen::Vector3d::Zero();
    Eigen::Vector3d mean_dst = Eigen::Vector3d::Zero();
    for (std::size_t i : subset) {
        mean_src += pairs[i].first;
        mean_dst += pairs[i].second;
    }
    const double n = static_cast<double>(subset.size());
    mean_src /= n;
    mean_dst /= n;

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (std::size_t i : subset)
        cov += (pairs[i].second - mean_dst) * (pairs[i].first - mean_src).transpose();

    Eigen::JacobiSVD<Eigen::Matrix3d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Matrix3d& u = svd.matrixU();
    const Eigen::Matrix3d& v = svd.matrixV();
    Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
    if ((u * v.transpose()).determinant() < 0.0) d(2, 2) = -1.0;
    const Eigen::Matrix3d rotation = u * d * v.transpose();

    Pose out = Pose::from_rotation_matrix(rotation);
    out.translation = mean_dst - out.rotation * mean_src;
    return out;
}

Pose fit_rigid(std::span<const PointPair> pairs) {
    std::vector<std::size_t> all(pairs.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return fit_rigid(pairs, all);
}

}  // namespace alight
