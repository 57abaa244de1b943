#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "alight/core/errors.hpp"
#include "alight/core/trajectory.hpp"

namespace alight::eval {

class AssociationFailure : public Error {
public:
    using Error::Error;
};

struct PosePair {
    double gt_timestamp = 0.0;
    double est_timestamp = 0.0;
    Pose gt;
    Pose est;
};

/// Pairs each estimate with the nearest unused ground-truth sample within
/// max_dt. Throws AssociationFailure when nothing pairs.
std::vector<PosePair> associate(const Trajectory& gt, const Trajectory& est, double max_dt = 0.02);

struct ApeSample {
    double ate = 0.0;  ///< meters
    double are = 0.0;  ///< radians
};

/// E = relative_pose(gt, est); ATE = ‖trans(E)‖, ARE = angle(rot(E)).
ApeSample ape(const Pose& gt, const Pose& est);

/// Throws InvalidInputError on an empty list.
double rmse(std::span<const double> values);

/// Sum of consecutive translation distances.
double trajectory_length(const Trajectory& trajectory);

/// L_est / L_gt. Throws InvalidInputError for < 2 samples or zero GT length.
double trajectory_ratio(const Trajectory& gt, const Trajectory& est);

/// Least-squares rigid transform taking the estimate into the GT frame over
/// the associated positions.
Pose align_rigid(std::span<const PosePair> pairs);

struct PerPoseError {
    double timestamp = 0.0;
    double ate = 0.0;
    double are = 0.0;
};

struct EpisodeReport {
    double ate_rmse = 0.0;
    double are_rmse = 0.0;
    /// NaN when the ground truth never moves.
    double r_t = 0.0;
    std::size_t t_lost = 0;
    std::size_t pairs = 0;
    std::vector<PerPoseError> errors;
};

struct EvaluateOptions {
    double max_dt = 0.02;
    /// Rigidly pre-align the estimate onto the GT (for imported trajectories).
    bool align = false;
};

EpisodeReport evaluate(const Trajectory& gt, const Trajectory& est, std::size_t t_lost,
                       const EvaluateOptions& options = {});

/// report.csv: one header line and one row (ate_rmse,are_rmse,r_t,t_lost,pairs).
void write_report_csv(std::ostream& out, const EpisodeReport& report);
void write_report_csv(const std::filesystem::path& path, const EpisodeReport& report);
/// errors.csv: timestamp,ate,are per associated pose.
void write_errors_csv(const std::filesystem::path& path, const EpisodeReport& report);
/// summary.json with the scalar metrics plus free-form labels.
void write_summary_json(const std::filesystem::path& path, const EpisodeReport& report,
                        const std::vector<std::pair<std::string, std::string>>& labels = {});
EpisodeReport read_report_csv(const std::filesystem::path& path);

/// Top-down (x, y) SVG overlay of ground truth and estimate.
std::string trajectory_svg(const Trajectory& gt, const Trajectory& est, const std::string& title = {});

}  // namespace alight::eval
