#include "alight/pipeline/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace alight::pipeline {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kRadToDeg = 180.0 / std::numbers::pi;
constexpr double kDegToRad = std::numbers::pi / 180.0;

template <typename T>
void read(const json& j, const char* key, T& field) {
    if (j.contains(key)) field = j[key].get<T>();
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    return s;
}

}  // namespace

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::AL: return "AL";
        case Mode::FL: return "FL";
        case Mode::LO: return "LO";
    }
    return "?";
}

Mode parse_mode(const std::string& text) {
    const std::string u = upper(text);
    if (u == "AL") return Mode::AL;
    if (u == "FL") return Mode::FL;
    if (u == "LO") return Mode::LO;
    throw ConfigError("unknown mode '" + text + "' (expected AL, FL or LO)");
}

std::int64_t PipelineConfig::tick_count() const {
    return static_cast<std::int64_t>(std::floor(duration * fps_h + 1e-9));
}

void PipelineConfig::validate() const {
    try {
        if (!(fps_h > 0.0)) throw ConfigError("fps_h must be positive");
        if (!(resample_period >= 1.0 / fps_h - 1e-12)) throw ConfigError("resample period must be at least 1/fps_h");
        if (!(duration > 0.0)) throw ConfigError("episode duration must be positive");
        if (supersample < 1) throw ConfigError("supersample must be at least 1");
        if (!(max_dt > 0.0)) throw ConfigError("association max_dt must be positive");
        camera.validate();
        tsm.validate();
        cluster.validate();
        arm.validate();
        enhancer.classical.validate();
        if (enhancer.kind == EnhancerSpec::Kind::External && enhancer.external.argv.empty())
            throw ConfigError("external enhancer needs a command");
        if (odom.inlier_min < 3) throw ConfigError("odometry inlier_min must be at least 3");
    } catch (const InvalidInputError& e) {
        throw ConfigError(e.what());
    }
}

PipelineConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    PipelineConfig c;
    try {
        if (j.contains("scene")) {
            std::filesystem::path p = j["scene"].get<std::string>();
            c.scene_path = (p.is_absolute() || base_dir.empty() ? p : base_dir / p).lexically_normal();
        }
        if (j.contains("mode")) c.mode = parse_mode(j["mode"].get<std::string>());
        read(j, "seed", c.seed);
        read(j, "duration_s", c.duration);
        read(j, "fps_h", c.fps_h);
        read(j, "resample_period_s", c.resample_period);

        if (j.contains("camera")) {
            const auto& cam = j["camera"];
            read(cam, "width", c.camera.width);
            read(cam, "height", c.camera.height);
            read(cam, "fx", c.camera.fx);
            read(cam, "fy", c.camera.fy);
            read(cam, "cx", c.camera.cx);
            read(cam, "cy", c.camera.cy);
            read(cam, "exposure_gain", c.camera.exposure_gain);
            if (cam.contains("scale")) c.camera = c.camera.scaled(cam["scale"].get<double>());
        }
        c.camera.fps_h = c.fps_h;
        // Resolution-dependent defaults, overridable below.
        c.cluster = focus::ClusterParams::for_camera(c.camera);
        c.odom = odom::OdomConfig::for_camera(c.camera);

        if (j.contains("render")) read(j["render"], "supersample", c.supersample);
        if (j.contains("tsm")) {
            const auto& t = j["tsm"];
            read(t, "alpha", c.tsm.alpha);
            read(t, "epsilon", c.tsm.epsilon);
            if (t.contains("normalization")) {
                const std::string m = t["normalization"].get<std::string>();
                if (m == "standard") c.tsm.mode = focus::NormalizationMode::Standard;
                else if (m == "literal") c.tsm.mode = focus::NormalizationMode::Literal;
                else throw ConfigError("tsm.normalization must be 'standard' or 'literal'");
            }
        }
        if (j.contains("cluster")) {
            read(j["cluster"], "eps_px", c.cluster.eps_px);
            read(j["cluster"], "min_pts", c.cluster.min_pts);
        }
        if (j.contains("focus_detector")) {
            read(j["focus_detector"], "threshold", c.focus_detector.threshold);
            read(j["focus_detector"], "nms_radius", c.focus_detector.nms_radius);
        }
        if (j.contains("arm")) {
            const auto& a = j["arm"];
            read(a, "ppm_min", c.arm.ppm_min);
            read(a, "ppm_max", c.arm.ppm_max);
            read(a, "delta_max", c.arm.delta_max);
            read(a, "smoothing_beta", c.arm.smoothing_beta);
            read(a, "snap_tolerance", c.arm.snap_tolerance);
            if (a.contains("pan_range_deg")) {
                c.arm.pan_min = a["pan_range_deg"][0].get<double>() * kDegToRad;
                c.arm.pan_max = a["pan_range_deg"][1].get<double>() * kDegToRad;
            }
            if (a.contains("tilt_range_deg")) {
                c.arm.tilt_min = a["tilt_range_deg"][0].get<double>() * kDegToRad;
                c.arm.tilt_max = a["tilt_range_deg"][1].get<double>() * kDegToRad;
            }
        }
        if (j.contains("enhancer")) {
            const auto& e = j["enhancer"];
            const std::string kind = e.value("kind", "classical");
            if (kind == "classical") c.enhancer.kind = EnhancerSpec::Kind::Classical;
            else if (kind == "external") c.enhancer.kind = EnhancerSpec::Kind::External;
            else throw ConfigError("enhancer.kind must be 'classical' or 'external'");
            read(e, "gamma", c.enhancer.classical.gamma);
            read(e, "clip_low", c.enhancer.classical.clip_low);
            read(e, "clip_high", c.enhancer.classical.clip_high);
            if (e.contains("command")) c.enhancer.external.argv = e["command"].get<std::vector<std::string>>();
            if (e.contains("timeout_s"))
                c.enhancer.external.timeout =
                    std::chrono::milliseconds(std::lround(e["timeout_s"].get<double>() * 1000.0));
        }
        if (j.contains("odometry")) {
            const auto& o = j["odometry"];
            read(o, "detector_threshold", c.odom.detector.threshold);
            read(o, "max_keypoints", c.odom.detector.max_keypoints);
            read(o, "search_radius_px", c.odom.matcher.search_radius);
            read(o, "patch_size", c.odom.matcher.patch_size);
            read(o, "match_min_score", c.odom.matcher.min_score);
            read(o, "inlier_min", c.odom.inlier_min);
            read(o, "ransac_iterations", c.odom.ransac.iterations);
            read(o, "ransac_threshold_m", c.odom.ransac.inlier_threshold);
            read(o, "keyframe_min_ratio", c.odom.keyframe_min_ratio);
            read(o, "keyframe_max_flow_px", c.odom.keyframe_max_flow);
        }
        if (j.contains("evaluation")) read(j["evaluation"], "max_dt_s", c.max_dt);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const InvalidInputError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.parent_path());
}

std::string config_to_json(const PipelineConfig& c) {
    auto degrees = [](double rad) { return std::round(rad * kRadToDeg * 1e9) / 1e9; };
    ordered_json j;
    j["scene"] = c.scene_path.string();
    j["mode"] = to_string(c.mode);
    j["seed"] = c.seed;
    j["duration_s"] = c.duration;
    j["fps_h"] = c.fps_h;
    j["resample_period_s"] = c.resample_period;
    j["camera"] = {{"width", c.camera.width}, {"height", c.camera.height}, {"fx", c.camera.fx},
                   {"fy", c.camera.fy},       {"cx", c.camera.cx},         {"cy", c.camera.cy},
                   {"exposure_gain", c.camera.exposure_gain}};
    j["render"] = {{"supersample", c.supersample}};
    j["tsm"] = {{"alpha", c.tsm.alpha},
                {"epsilon", c.tsm.epsilon},
                {"normalization", c.tsm.mode == focus::NormalizationMode::Standard ? "standard" : "literal"}};
    j["cluster"] = {{"eps_px", c.cluster.eps_px}, {"min_pts", c.cluster.min_pts}};
    j["focus_detector"] = {{"threshold", c.focus_detector.threshold}, {"nms_radius", c.focus_detector.nms_radius}};
    j["arm"] = {{"ppm_min", c.arm.ppm_min},
                {"ppm_max", c.arm.ppm_max},
                {"delta_max", c.arm.delta_max},
                {"smoothing_beta", c.arm.smoothing_beta},
                {"snap_tolerance", c.arm.snap_tolerance},
                {"pan_range_deg", {degrees(c.arm.pan_min), degrees(c.arm.pan_max)}},
                {"tilt_range_deg", {degrees(c.arm.tilt_min), degrees(c.arm.tilt_max)}}};
    ordered_json e;
    e["kind"] = c.enhancer.kind == EnhancerSpec::Kind::Classical ? "classical" : "external";
    e["gamma"] = c.enhancer.classical.gamma;
    e["clip_low"] = c.enhancer.classical.clip_low;
    e["clip_high"] = c.enhancer.classical.clip_high;
    e["command"] = c.enhancer.external.argv;
    e["timeout_s"] = c.enhancer.external.timeout.count() / 1000.0;
    j["enhancer"] = e;
    j["odometry"] = {{"detector_threshold", c.odom.detector.threshold},
                     {"max_keypoints", c.odom.detector.max_keypoints},
                     {"search_radius_px", c.odom.matcher.search_radius},
                     {"patch_size", c.odom.matcher.patch_size},
                     {"match_min_score", c.odom.matcher.min_score},
                     {"inlier_min", c.odom.inlier_min},
                     {"ransac_iterations", c.odom.ransac.iterations},
                     {"ransac_threshold_m", c.odom.ransac.inlier_threshold},
                     {"keyframe_min_ratio", c.odom.keyframe_min_ratio},
                     {"keyframe_max_flow_px", c.odom.keyframe_max_flow}};
    j["evaluation"] = {{"max_dt_s", c.max_dt}};
    return j.dump(2);
}

}  // namespace alight::pipeline
