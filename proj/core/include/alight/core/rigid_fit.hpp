#pragma once

#include <span>
#include <utility>

#include <Eigen/Core>

#include "alight/core/pose.hpp"

namespace alight {

using PointPair = std::pair<Eigen::Vector3d, Eigen::Vector3d>;

/// Closed-form least-squares rigid transform T minimising Σ‖T·first − second‖²
/// (centroid subtraction, cross-covariance SVD, reflection guard).
/// Throws InvalidInputError for fewer than 3 pairs or collinear geometry.
Pose fit_rigid(std::span<const PointPair> pairs);

/// Same, restricted to the given indices.
Pose fit_rigid(std::span<const PointPair> pairs, std::span<const std::size_t> subset);

/// True when the points are (numerically) collinear or coincident.
bool degenerate_configuration(std::span<const PointPair> pairs, std::span<const std::size_t> subset);

}  // namespace alight
