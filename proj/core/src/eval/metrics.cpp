#include "alight/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "alight/core/rigid_fit.hpp"

namespace alight::eval {

std::vector<PosePair> associate(const Trajectory& gt, const Trajectory& est, double max_dt) {
    if (gt.empty() || est.empty()) throw AssociationFailure("cannot associate an empty trajectory");
    std::vector<bool> used(gt.size(), false);
    std::vector<PosePair> out;
    for (const auto& e : est.samples) {
        const auto it = std::lower_bound(gt.samples.begin(), gt.samples.end(), e.timestamp,
                                         [](const TimedPose& s, double t) { return s.timestamp < t; });
        std::size_t best = gt.size();
        double best_dt = 0.0;
        auto consider = [&](std::size_t i) {
            const double dt = std::abs(gt.samples[i].timestamp - e.timestamp);
            if (used[i] || dt > max_dt) return;
            if (best == gt.size() || dt < best_dt) best = i, best_dt = dt;
        };
        const auto idx = static_cast<std::size_t>(it - gt.samples.begin());
        if (idx > 0) consider(idx - 1);
        if (idx < gt.size()) consider(idx);
        if (best == gt.size()) continue;
        used[best] = true;
        out.push_back({gt.samples[best].timestamp, e.timestamp, gt.samples[best].pose, e.pose});
    }
    if (out.empty()) throw AssociationFailure("no estimate pose lies within max_dt of a ground-truth pose");
    return out;
}

ApeSample ape(const Pose& gt, const Pose& est) {
    const Pose e = relative_pose(gt, est);
    return {translation_norm(e), rotation_angle(e)};
}

double rmse(std::span<const double> values) {
    if (values.empty()) throw InvalidInputError("rmse of an empty list");
    double sum = 0.0;
    for (double v : values) sum += v * v;
    return std::sqrt(sum / static_cast<double>(values.size()));
}

double trajectory_length(const Trajectory& trajectory) {
    double length = 0.0;
    for (std::size_t i = 1; i < trajectory.size(); ++i)
        length += (trajectory.samples[i].pose.translation - trajectory.samples[i - 1].pose.translation).norm();
    return length;
}

double trajectory_ratio(const Trajectory& gt, const Trajectory& est) {
    if (gt.size() < 2 || est.size() < 2) throw InvalidInputError("trajectory ratio needs at least 2 samples each");
    const double l_gt = trajectory_length(gt);
    if (!(l_gt > 0.0)) throw InvalidInputError("ground-truth trajectory has zero length");
    return trajectory_length(est) / l_gt;
}

Pose align_rigid(std::span<const PosePair> pairs) {
    std::vector<PointPair> points;
    points.reserve(pairs.size());
    for (const auto& p : pairs) points.emplace_back(p.est.translation, p.gt.translation);
    return fit_rigid(points);
}

EpisodeReport evaluate(const Trajectory& gt, const Trajectory& est, std::size_t t_lost,
                       const EvaluateOptions& options) {
    auto pairs = associate(gt, est, options.max_dt);
    Trajectory est_used = est;
    if (options.align) {
        const Pose t = align_rigid(pairs);
        for (auto& p : pairs) p.est = compose(t, p.est);
        for (auto& s : est_used.samples) s.pose = compose(t, s.pose);
    }

    EpisodeReport report;
    report.t_lost = t_lost;
    report.pairs = pairs.size();
    std::vector<double> ates, ares;
    ates.reserve(pairs.size());
    ares.reserve(pairs.size());
    for (const auto& p : pairs) {
        const ApeSample s = ape(p.gt, p.est);
        ates.push_back(s.ate);
        ares.push_back(s.are);
        report.errors.push_back({p.est_timestamp, s.ate, s.are});
    }
    report.ate_rmse = rmse(ates);
    report.are_rmse = rmse(ares);
    // A stationary ground truth has no length to compare against.
    report.r_t = trajectory_length(gt) > 0.0 ? trajectory_ratio(gt, est_used) : std::nan("");
    return report;
}

}  // namespace alight::eval
