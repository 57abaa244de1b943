#include "alight/core/trajectory.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "alight/core/errors.hpp"

namespace alight {

void Trajectory::validate() const {
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i].timestamp > samples[i - 1].timestamp))
            throw InvalidInputError("trajectory timestamps must strictly increase");
    }
}

void write_tum(std::ostream& out, const Trajectory& trajectory) {
    char line[256];
    for (const auto& s : trajectory.samples) {
        const auto& t = s.pose.translation;
        const auto& q = s.pose.rotation;
        std::snprintf(line, sizeof line, "%.9f %.17g %.17g %.17g %.17g %.17g %.17g %.17g\n",
                      s.timestamp, t.x(), t.y(), t.z(), q.x(), q.y(), q.z(), q.w());
        out << line;
    }
}

void write_tum(const std::filesystem::path& path, const Trajectory& trajectory) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    write_tum(out, trajectory);
}

Trajectory read_tum(std::istream& in, TrajectoryKind kind) {
    Trajectory traj;
    traj.kind = kind;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        double ts, tx, ty, tz, qx, qy, qz, qw;
        if (!(fields >> ts >> tx >> ty >> tz >> qx >> qy >> qz >> qw))
            throw IoError("malformed TUM line " + std::to_string(lineno));
        TimedPose sample;
        sample.timestamp = ts;
        sample.pose.translation = {tx, ty, tz};
        Eigen::Quaterniond q(qw, qx, qy, qz);
        if (q.norm() < 1e-12) throw IoError("zero quaternion on TUM line " + std::to_string(lineno));
        sample.pose.rotation = q.normalized();
        traj.samples.push_back(sample);
    }
    traj.validate();
    return traj;
}

Trajectory read_tum(const std::filesystem::path& path, TrajectoryKind kind) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return read_tum(in, kind);
}

}  // namespace alight
