#include "alight/focus/focus_block.hpp"

namespace alight::focus {

FocusBlock::FocusBlock(FocusParams params) : params_(params) {
    params_.cluster.validate();
    params_.tsm.validate();
}

FocusOutput FocusBlock::process(const Frame& enhanced) {
    FocusOutput out;
    out.keypoints = detect_features(enhanced.intensity, params_.detector);
    out.centroids = cluster(out.keypoints, params_.cluster);
    if (!out.centroids.empty()) out.selection = select_target(out.centroids, state_, params_.tsm);
    return out;
}

}  // namespace alight::focus
