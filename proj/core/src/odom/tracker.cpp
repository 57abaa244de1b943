#include "alight/odom/odometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace alight::odom {

Pose refine_alignment(const Pose& initial, std::span<const PointPair> pairs, const std::vector<bool>& mask,
                      double focal) {
    if (pairs.size() != mask.size()) throw InvalidInputError("refine_alignment: size mismatch");
    constexpr double kHuber = 1.0;
    auto cost = [&](const Pose& t) {
        double c = 0.0;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (!mask[i]) continue;
            const double e = focal * (t.apply(pairs[i].first) - pairs[i].second).norm() / pairs[i].second.z();
            c += e <= kHuber ? 0.5 * e * e : kHuber * (e - 0.5 * kHuber);
        }
        return c;
    };

    Pose t = initial;
    double current = cost(t);
    for (int iter = 0; iter < 10; ++iter) {
        Eigen::Matrix<double, 6, 6> h = Eigen::Matrix<double, 6, 6>::Zero();
        Eigen::Matrix<double, 6, 1> g = Eigen::Matrix<double, 6, 1>::Zero();
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (!mask[i]) continue;
            const Eigen::Vector3d x = t.apply(pairs[i].first);
            const double s = focal / pairs[i].second.z();
            const Eigen::Vector3d r = s * (x - pairs[i].second);
            Eigen::Matrix<double, 3, 6> j;
            j << 0.0, x.z(), -x.y(), 1.0, 0.0, 0.0,
                 -x.z(), 0.0, x.x(), 0.0, 1.0, 0.0,
                 x.y(), -x.x(), 0.0, 0.0, 0.0, 1.0;
            j *= s;
            const double n = r.norm();
            const double w = n <= kHuber ? 1.0 : kHuber / n;
            h += w * j.transpose() * j;
            g += w * j.transpose() * r;
        }
        const Eigen::Matrix<double, 6, 1> step = h.ldlt().solve(-g);
        if (!step.allFinite()) break;
        const Eigen::Vector3d w = step.head<3>();
        Pose delta = w.norm() > 0.0 ? Pose::from_axis_angle(w.normalized(), w.norm()) : Pose::identity();
        delta.translation = step.tail<3>();
        const Pose next = compose(delta, t);
        const double c = cost(next);
        if (!(c < current)) break;
        t = next;
        current = c;
        if (step.norm() < 1e-10) break;
    }
    return t;
}

OdomConfig OdomConfig::for_camera(const CameraModel& camera) {
    OdomConfig c;
    const double scale = camera.width / 212.0;
    c.inlier_min = static_cast<std::size_t>(std::lround(12.0 * scale));
    c.matcher.search_radius = 20.0 * scale;
    c.keyframe_max_flow = 6.0 * scale;
    c.detector.max_keypoints = static_cast<std::size_t>(std::lround(300.0 * scale * scale));
    return c;
}

std::optional<double> sample_depth(const DepthImage& depth, const PixelPoint& p) {
    if (!(p.x >= 0.0 && p.y >= 0.0 && p.x <= depth.width() - 1.0 && p.y <= depth.height() - 1.0)) return std::nullopt;
    const int x0 = static_cast<int>(std::floor(p.x));
    const int y0 = static_cast<int>(std::floor(p.y));
    const int nx = std::clamp(static_cast<int>(std::lround(p.x)), 0, depth.width() - 1);
    const int ny = std::clamp(static_cast<int>(std::lround(p.y)), 0, depth.height() - 1);
    auto nearest = [&]() -> std::optional<double> {
        const float d = depth.at(nx, ny);
        if (std::isnan(d) || !(d > 0.0f)) return std::nullopt;
        return d;
    };
    if (x0 < 0 || y0 < 0 || x0 + 1 >= depth.width() || y0 + 1 >= depth.height()) return nearest();

    const double d00 = depth.at(x0, y0), d10 = depth.at(x0 + 1, y0);
    const double d01 = depth.at(x0, y0 + 1), d11 = depth.at(x0 + 1, y0 + 1);
    const double lo = std::min({d00, d10, d01, d11});
    const double hi = std::max({d00, d10, d01, d11});
    if (std::isnan(d00) || std::isnan(d10) || std::isnan(d01) || std::isnan(d11) || !(lo > 0.0) ||
        hi > 1.05 * lo)
        return nearest();
    const double fx = p.x - x0, fy = p.y - y0;
    const double inv = (1 - fx) * (1 - fy) / d00 + fx * (1 - fy) / d10 + (1 - fx) * fy / d01 + fx * fy / d11;
    return 1.0 / inv;
}

TrackResult track(OdomState& state, const Frame& frame, const CameraModel& camera, const OdomConfig& config) {
    if (!frame.depth) throw ConfigError("odometry requires frames with a depth channel");
    if (state.reference && !(frame.timestamp > state.reference->frame.timestamp))
        throw InvalidInputError("frames must arrive in increasing time order");

    TrackResult result;
    auto keypoints = focus::detect_features(frame.intensity, config.detector);
    result.keypoints = keypoints.size();

    if (!state.reference) {
        state.reference = Reference{frame, std::move(keypoints), state.pose};
        result.status = TrackStatus::Initialized;
        result.pose = state.pose;
        return result;
    }

    const Reference& ref = *state.reference;
    const auto matches = match_features(ref.frame.intensity, ref.keypoints, frame.intensity, keypoints, config.matcher);
    result.matches = matches.size();

    std::vector<PointPair> pairs;
    std::vector<double> flow;
    pairs.reserve(matches.size());
    for (const auto& m : matches) {
        const auto dp = sample_depth(*ref.frame.depth, m.prev);
        const auto dc = sample_depth(*frame.depth, m.cur);
        if (!dp || !dc) continue;
        pairs.emplace_back(unproject(camera, m.prev, *dp), unproject(camera, m.cur, *dc));
        flow.push_back(std::hypot(m.cur.x - m.prev.x, m.cur.y - m.prev.y));
    }

    std::optional<RigidEstimate> estimate;
    if (pairs.size() >= std::max<std::size_t>(3, state.inlier_min)) {
        try {
            estimate = estimate_rigid(pairs, config.ransac);
            if (estimate->inliers >= state.inlier_min)
                estimate->transform = refine_alignment(estimate->transform, pairs, estimate->inlier_mask, camera.fx);
        } catch (const EstimationFailure&) {
            estimate.reset();
        }
    }

    bool keep_reference = false;
    if (estimate && estimate->inliers >= state.inlier_min) {
        state.pose = compose(ref.pose, inverse(estimate->transform));
        result.status = TrackStatus::Tracked;
        result.inliers = estimate->inliers;
        state.established = true;
        double mean_flow = 0.0;
        for (std::size_t i = 0; i < flow.size(); ++i)
            if (estimate->inlier_mask[i]) mean_flow += flow[i];
        mean_flow /= static_cast<double>(estimate->inliers);
        keep_reference = static_cast<double>(estimate->inliers) >=
                             config.keyframe_min_ratio * static_cast<double>(ref.keypoints.size()) &&
                         mean_flow < config.keyframe_max_flow;
    } else if (!state.established) {
        result.status = TrackStatus::Initialized;
        result.inliers = estimate ? estimate->inliers : 0;
    } else {
        ++state.t_lost;
        result.status = TrackStatus::Lost;
        result.inliers = estimate ? estimate->inliers : 0;
    }
    if (!keep_reference) state.reference = Reference{frame, std::move(keypoints), state.pose};
    result.pose = state.pose;
    return result;
}

Tracker::Tracker(CameraModel camera, OdomConfig config, const Pose& initial_pose)
    : camera_(camera), config_(config) {
    camera_.validate();
    state_.pose = initial_pose;
    state_.inlier_min = config_.inlier_min;
}

TrackResult Tracker::track(const Frame& frame) {
    ++frames_consumed_;
    if (frame.enhanced) ++enhanced_frames_seen_;
    TrackResult r = odom::track(state_, frame, camera_, config_);
    if (r.status == TrackStatus::Lost) ++lost_emissions_;
    return r;
}

}  // namespace alight::odom
