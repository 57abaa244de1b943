#pragma once

#include <optional>
#include <vector>

#include "alight/core/frame.hpp"
#include "alight/focus/cluster.hpp"
#include "alight/focus/features.hpp"
#include "alight/focus/tsm.hpp"

namespace alight::focus {

struct FocusParams {
    DetectorParams detector{.threshold = 300.0};
    ClusterParams cluster;
    TsmParams tsm;
};

struct FocusOutput {
    std::vector<Keypoint> keypoints;
    std::vector<Centroid> centroids;
    /// Empty when no cluster was found; the previous target is kept.
    std::optional<Selection> selection;
};

/// Detect → cluster → select on an already enhanced frame. Owns the
/// previous-target state, so one instance serves one stream.
class FocusBlock {
public:
    explicit FocusBlock(FocusParams params = {});

    FocusOutput process(const Frame& enhanced);

    const FocusState& state() const { return state_; }
    const FocusParams& params() const { return params_; }
    void reset() { state_ = {}; }

private:
    FocusParams params_;
    FocusState state_;
};

}  // namespace alight::focus
