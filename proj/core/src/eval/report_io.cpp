#include "alight/eval/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace alight::eval {
namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

}  // namespace

void write_report_csv(std::ostream& out, const EpisodeReport& report) {
    out << "ate_rmse,are_rmse,r_t,t_lost,pairs\n"
        << fmt(report.ate_rmse) << ',' << fmt(report.are_rmse) << ',' << fmt(report.r_t) << ',' << report.t_lost
        << ',' << report.pairs << '\n';
}

void write_report_csv(const std::filesystem::path& path, const EpisodeReport& report) {
    auto out = open_out(path);
    write_report_csv(out, report);
}

void write_errors_csv(const std::filesystem::path& path, const EpisodeReport& report) {
    auto out = open_out(path);
    out << "timestamp,ate,are\n";
    for (const auto& e : report.errors) out << fmt(e.timestamp) << ',' << fmt(e.ate) << ',' << fmt(e.are) << '\n';
}

void write_summary_json(const std::filesystem::path& path, const EpisodeReport& report,
                        const std::vector<std::pair<std::string, std::string>>& labels) {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : labels) j[k] = v;
    j["ate_rmse_m"] = report.ate_rmse;
    j["are_rmse_rad"] = report.are_rmse;
    j["r_t"] = report.r_t;
    j["t_lost"] = report.t_lost;
    j["pairs"] = report.pairs;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

EpisodeReport read_report_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string header, row;
    if (!std::getline(in, header) || !std::getline(in, row)) throw IoError("truncated report " + path.string());
    std::vector<std::string> cells;
    std::istringstream fields(row);
    for (std::string cell; std::getline(fields, cell, ',');) cells.push_back(cell);
    if (cells.size() != 5) throw IoError("malformed report " + path.string());
    auto number = [&](const std::string& text) {
        char* end = nullptr;
        const double v = std::strtod(text.c_str(), &end);
        if (end == text.c_str() || *end != '\0') throw IoError("malformed report " + path.string());
        return v;
    };
    EpisodeReport r;
    r.ate_rmse = number(cells[0]);
    r.are_rmse = number(cells[1]);
    r.r_t = number(cells[2]);
    r.t_lost = static_cast<std::size_t>(number(cells[3]));
    r.pairs = static_cast<std::size_t>(number(cells[4]));
    return r;
}

std::string trajectory_svg(const Trajectory& gt, const Trajectory& est, const std::string& title) {
    constexpr double kSize = 640.0, kMargin = 40.0;
    double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
    double max_x = -min_x, max_y = -min_x;
    for (const auto* traj : {&gt, &est})
        for (const auto& s : traj->samples) {
            min_x = std::min(min_x, s.pose.translation.x());
            max_x = std::max(max_x, s.pose.translation.x());
            min_y = std::min(min_y, s.pose.translation.y());
            max_y = std::max(max_y, s.pose.translation.y());
        }
    if (!std::isfinite(min_x)) min_x = min_y = 0.0, max_x = max_y = 1.0;
    const double span = std::max({max_x - min_x, max_y - min_y, 1e-6});
    const double scale = (kSize - 2 * kMargin) / span;
    auto px = [&](double x) { return kMargin + (x - min_x) * scale; };
    // SVG y grows downward; world y is flipped so +y points up.
    auto py = [&](double y) { return kSize - kMargin - (y - min_y) * scale; };

    auto polyline = [&](const Trajectory& t, const char* colour, const char* dash) {
        std::ostringstream o;
        o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\"" << dash << " points=\"";
        char buf[64];
        for (const auto& s : t.samples) {
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(s.pose.translation.x()), py(s.pose.translation.y()));
            o << buf;
        }
        o << "\"/>\n";
        return o.str();
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
        << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty()) svg << "<text x=\"" << kMargin << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
    svg << polyline(gt, "#222222", " stroke-dasharray=\"6,4\"") << polyline(est, "#d62728", "")
        << "<text x=\"" << kMargin << "\" y=\"" << kSize - 12
        << "\" font-family=\"sans-serif\" font-size=\"12\">dashed: ground truth, red: estimate, scale "
        << fmt(1.0 / scale) << " m/px</text>\n</svg>\n";
    return svg.str();
}

}  // namespace alight::eval
