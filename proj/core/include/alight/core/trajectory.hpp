#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "alight/core/pose.hpp"

namespace alight {

struct TimedPose {
    double timestamp = 0.0;
    Pose pose;
};

enum class TrajectoryKind { GroundTruth, Estimate };

struct Trajectory {
    std::vector<TimedPose> samples;
    TrajectoryKind kind = TrajectoryKind::Estimate;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
    /// Throws InvalidInputError unless timestamps strictly increase.
    void validate() const;
};

/// TUM format: "timestamp tx ty tz qx qy qz qw" per line; '#' starts a comment.
void write_tum(std::ostream& out, const Trajectory& trajectory);
void write_tum(const std::filesystem::path& path, const Trajectory& trajectory);
Trajectory read_tum(std::istream& in, TrajectoryKind kind);
Trajectory read_tum(const std::filesystem::path& path, TrajectoryKind kind);

}  // namespace alight
