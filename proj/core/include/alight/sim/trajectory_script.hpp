#pragma once

#include <vector>

#include "alight/core/trajectory.hpp"

namespace alight::sim {

/// Ground-truth robot body path.
struct TrajectoryScript {
    std::vector<TimedPose> samples;

    double start_time() const;
    double end_time() const;
    void validate() const;
};

/// Linear in translation, slerp in rotation between the bracketing samples.
/// Throws OutOfRangeError outside [start_time, end_time].
Pose sample_ground_truth(const TrajectoryScript& script, double t);

}  // namespace alight::sim
