#pragma once

#include <span>
#include <vector>

#include "alight/core/camera.hpp"
#include "alight/focus/features.hpp"

namespace alight::focus {

struct ClusterParams {
    double eps_px = 24.0;
    std::size_t min_pts = 4;

    /// eps scaled linearly with image width relative to 212 px.
    static ClusterParams for_camera(const CameraModel& camera);
    void validate() const;
};

struct Centroid {
    PixelPoint position;
    std::size_t count = 0;
};

/// Density-based clustering: a point is core when at least min_pts points
/// (itself included) lie within eps_px; clusters are connected components of
/// core points plus the border points they reach; the rest is noise.
/// Centroids are member means, sorted by count descending, then row-major.
std::vector<Centroid> cluster(std::span<const Keypoint> keypoints, const ClusterParams& params);

/// Cluster label per keypoint (-1 for noise), in input order.
std::vector<int> cluster_labels(std::span<const Keypoint> keypoints, const ClusterParams& params);

}  // namespace alight::focus
