#include "alight/sim/trajectory_script.hpp"

#include <algorithm>

#include "alight/core/errors.hpp"

namespace alight::sim {

double TrajectoryScript::start_time() const {
    if (samples.empty()) throw OutOfRangeError("empty trajectory script");
    return samples.front().timestamp;
}

double TrajectoryScript::end_time() const {
    if (samples.empty()) throw OutOfRangeError("empty trajectory script");
    return samples.back().timestamp;
}

void TrajectoryScript::validate() const {
    if (samples.empty()) throw InvalidInputError("trajectory script has no samples");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i].timestamp > samples[i - 1].timestamp))
            throw InvalidInputError("trajectory script timestamps must strictly increase");
}

Pose sample_ground_truth(const TrajectoryScript& script, double t) {
    if (script.samples.empty() || t < script.start_time() || t > script.end_time())
        throw OutOfRangeError("time " + std::to_string(t) + " outside trajectory script range");
    const auto upper = std::upper_bound(script.samples.begin(), script.samples.end(), t,
                                        [](double value, const TimedPose& s) { return value < s.timestamp; });
    const auto& before = *(upper - 1);
    if (before.timestamp == t || upper == script.samples.end()) return before.pose;
    const double s = (t - before.timestamp) / (upper->timestamp - before.timestamp);
    return interpolate(before.pose, upper->pose, s);
}

}  // namespace alight::sim
