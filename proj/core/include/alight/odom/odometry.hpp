#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "alight/core/camera.hpp"
#include "alight/core/errors.hpp"
#include "alight/core/frame.hpp"
#include "alight/core/rigid_fit.hpp"
#include "alight/focus/features.hpp"

namespace alight::odom {

using focus::Keypoint;

class EstimationFailure : public Error {
public:
    using Error::Error;
};

struct Match {
    PixelPoint prev;
    PixelPoint cur;
    /// Normalised cross-correlation in [-1, 1].
    double score = 0.0;
    std::size_t prev_index = 0;
    std::size_t cur_index = 0;
};

struct MatcherParams {
    int patch_size = 11;
    double search_radius = 20.0;
    double min_score = 0.8;
};

/// For each previous keypoint, the current keypoint within search_radius whose
/// patch has the highest NCC; kept only when the choice is mutual and scores
/// at least min_score. Match.prev is the rounded previous keypoint and
/// Match.cur the current position found by Lucas-Kanade alignment of that
/// patch, started at the chosen keypoint; matches whose alignment wanders more
/// than 2 px are dropped. Result is ordered by previous keypoint index.
std::vector<Match> match_features(const GrayImage& prev, std::span<const Keypoint> prev_keypoints,
                                  const GrayImage& cur, std::span<const Keypoint> cur_keypoints,
                                  const MatcherParams& params);

/// Detects the current keypoints with `detector` first.
std::vector<Match> match_features(const GrayImage& prev, std::span<const Keypoint> prev_keypoints,
                                  const GrayImage& cur, const focus::DetectorParams& detector,
                                  const MatcherParams& params);

/// NCC between square patches centred on the rounded positions; 0 when
/// either patch is flat or leaves the image.
double patch_ncc(const GrayImage& a, const PixelPoint& pa, const GrayImage& b, const PixelPoint& pb,
                 int patch_size);

struct RansacParams {
    int iterations = 200;
    double inlier_threshold = 0.05;
    std::uint64_t seed = 0x5eed;
};

struct RigidEstimate {
    /// Maps previous-frame points onto current-frame points.
    Pose transform;
    std::size_t inliers = 0;
    std::vector<bool> inlier_mask;
};

/// RANSAC over minimal 3-point samples with a least-squares refit on the
/// consensus set. Throws EstimationFailure for < 3 pairs or degenerate data.
RigidEstimate estimate_rigid(std::span<const PointPair> correspondences, const RansacParams& params = {});

/// Gauss-Newton refinement of a previous → current transform on the 3D
/// residual T·p - q of each masked pair, scaled by focal / q.z so that it is
/// roughly in pixels, Huber-weighted at 1. Never returns a pose with higher
/// cost than `initial`.
Pose refine_alignment(const Pose& initial, std::span<const PointPair> pairs, const std::vector<bool>& mask,
                      double focal);

struct OdomConfig {
    focus::DetectorParams detector{.threshold = 40.0, .max_keypoints = 300};
    MatcherParams matcher;
    RansacParams ransac;
    std::size_t inlier_min = 12;
    /// The reference frame is kept while a track retains at least this
    /// fraction of its keypoints as inliers and the mean inlier flow stays
    /// under keyframe_max_flow pixels.
    double keyframe_min_ratio = 0.5;
    double keyframe_max_flow = 6.0;

    /// inlier_min, search radius and keyframe_max_flow scaled linearly with width relative to 212 px.
    static OdomConfig for_camera(const CameraModel& camera);
};

struct Reference {
    Frame frame;
    std::vector<Keypoint> keypoints;
    /// Camera pose when the frame was taken.
    Pose pose;
};

struct OdomState {
    /// Camera pose in the world, chained from reference to reference.
    Pose pose;
    std::optional<Reference> reference;
    std::size_t inlier_min = 12;
    std::size_t t_lost = 0;
    /// Set by the first successful track. Before that a failed step only
    /// replaces the reference; it is not a loss.
    bool established = false;
};

/// Initialized: the frame became the reference of a tracker that has not
/// tracked yet. Lost: an established tracker failed on this frame.
enum class TrackStatus { Initialized, Tracked, Lost };

struct TrackResult {
    TrackStatus status = TrackStatus::Initialized;
    Pose pose;
    std::size_t keypoints = 0;
    std::size_t matches = 0;
    std::size_t inliers = 0;
};

/// Depth at a sub-pixel location: bilinear in inverse depth, nearest pixel
/// across discontinuities, nullopt without a surface or off the image.
std::optional<double> sample_depth(const DepthImage& depth, const PixelPoint& p);

/// One tracking step. Throws ConfigError when the frame has no depth channel.
TrackResult track(OdomState& state, const Frame& frame, const CameraModel& camera, const OdomConfig& config);

/// Owns an OdomState and counts what it is fed.
class Tracker {
public:
    Tracker(CameraModel camera, OdomConfig config, const Pose& initial_pose = {});

    TrackResult track(const Frame& frame);

    const OdomState& state() const { return state_; }
    std::size_t frames_consumed() const { return frames_consumed_; }
    /// Frames carrying the enhanced flag; stays 0 when streams are separated.
    std::size_t enhanced_frames_seen() const { return enhanced_frames_seen_; }
    std::size_t lost_emissions() const { return lost_emissions_; }

private:
    CameraModel camera_;
    OdomConfig config_;
    OdomState state_;
    std::size_t frames_consumed_ = 0;
    std::size_t enhanced_frames_seen_ = 0;
    std::size_t lost_emissions_ = 0;
};

}  // namespace alight::odom
