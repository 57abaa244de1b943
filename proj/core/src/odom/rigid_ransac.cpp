#include "alight/odom/odometry.hpp"

#include <array>

#include "alight/core/rng.hpp"

namespace alight::odom {
namespace {

std::vector<std::size_t> consensus(std::span<const PointPair> pairs, const Pose& model, double threshold) {
    std::vector<std::size_t> inliers;
    const double t2 = threshold * threshold;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if ((model.apply(pairs[i].first) - pairs[i].second).squaredNorm() <= t2) inliers.push_back(i);
    return inliers;
}

}  // namespace

RigidEstimate estimate_rigid(std::span<const PointPair> correspondences, const RansacParams& params) {
    const std::size_t n = correspondences.size();
    if (n < 3) throw EstimationFailure("rigid estimation needs at least 3 correspondences");

    SplitMix64 rng(params.seed);
    std::vector<std::size_t> best;
    for (int it = 0; it < params.iterations; ++it) {
        std::array<std::size_t, 3> sample{};
        sample[0] = rng.below(n);
        do sample[1] = rng.below(n); while (sample[1] == sample[0]);
        do sample[2] = rng.below(n); while (sample[2] == sample[0] || sample[2] == sample[1]);
        if (degenerate_configuration(correspondences, sample)) continue;
        const Pose model = fit_rigid(correspondences, sample);
        auto inliers = consensus(correspondences, model, params.inlier_threshold);
        if (inliers.size() > best.size()) best = std::move(inliers);
        if (best.size() == n) break;
    }
    if (best.size() < 3 || degenerate_configuration(correspondences, best))
        throw EstimationFailure("no non-degenerate consensus set");

    // Refit until the consensus set stops changing.
    Pose model = fit_rigid(correspondences, best);
    for (int round = 0; round < 5; ++round) {
        auto refined = consensus(correspondences, model, params.inlier_threshold);
        if (refined == best || refined.size() < 3 || degenerate_configuration(correspondences, refined)) break;
        best = std::move(refined);
        model = fit_rigid(correspondences, best);
    }

    RigidEstimate out;
    out.transform = model;
    out.inlier_mask.assign(n, false);
    for (std::size_t i : best) out.inlier_mask[i] = true;
    out.inliers = best.size();
    return out;
}

}  // namespace alight::odom
