#include "alight/focus/cluster.hpp"

#include <algorithm>
#include <deque>

#include "alight/core/errors.hpp"

namespace alight::focus {

ClusterParams ClusterParams::for_camera(const CameraModel& camera) {
    ClusterParams p;
    p.eps_px = 24.0 * camera.width / 212.0;
    return p;
}

void ClusterParams::validate() const {
    if (!(eps_px > 0.0)) throw InvalidInputError("cluster eps must be positive");
    if (min_pts < 1) throw InvalidInputError("cluster min_pts must be at least 1");
}

std::vector<int> cluster_labels(std::span<const Keypoint> keypoints, const ClusterParams& params) {
    params.validate();
    const std::size_t n = keypoints.size();
    const double eps2 = params.eps_px * params.eps_px;

    std::vector<std::vector<std::size_t>> neighbours(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double dx = keypoints[i].position.x - keypoints[j].position.x;
            const double dy = keypoints[i].position.y - keypoints[j].position.y;
            if (dx * dx + dy * dy <= eps2) neighbours[i].push_back(j);
        }
    }
    auto is_core = [&](std::size_t i) { return neighbours[i].size() >= params.min_pts; };

    constexpr int kUnassigned = -1;
    std::vector<int> labels(n, kUnassigned);
    int next = 0;
    for (std::size_t seed = 0; seed < n; ++seed) {
        if (labels[seed] != kUnassigned || !is_core(seed)) continue;
        const int id = next++;
        std::deque<std::size_t> frontier{seed};
        labels[seed] = id;
        while (!frontier.empty()) {
            const std::size_t p = frontier.front();
            frontier.pop_front();
            if (!is_core(p)) continue;
            for (std::size_t q : neighbours[p]) {
                if (labels[q] != kUnassigned) continue;
                labels[q] = id;
                frontier.push_back(q);
            }
        }
    }
    return labels;
}

std::vector<Centroid> cluster(std::span<const Keypoint> keypoints, const ClusterParams& params) {
    const std::vector<int> labels = cluster_labels(keypoints, params);
    const int count = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<Centroid> out(static_cast<std::size_t>(std::max(count, 0)));
    std::vector<double> sx(out.size(), 0.0), sy(out.size(), 0.0);
    for (std::size_t i = 0; i < keypoints.size(); ++i) {
        if (labels[i] < 0) continue;
        const auto c = static_cast<std::size_t>(labels[i]);
        sx[c] += keypoints[i].position.x;
        sy[c] += keypoints[i].position.y;
        ++out[c].count;
    }
    for (std::size_t c = 0; c < out.size(); ++c) {
        const double n = static_cast<double>(out[c].count);
        out[c].position = {sx[c] / n, sy[c] / n};
    }
    std::sort(out.begin(), out.end(), [](const Centroid& a, const Centroid& b) {
        if (a.count != b.count) return a.count > b.count;
        return row_major_less(a.position, b.position);
    });
    return out;
}

}  // namespace alight::focus
