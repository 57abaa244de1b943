#include "alight/sim/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "alight/core/errors.hpp"

namespace alight::sim {
namespace {

using nlohmann::json;

Eigen::Vector3d vec3(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) throw ConfigError(std::string(what) + " must be a 3-element array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Pose parse_pose(const json& j) {
    const Eigen::Vector3d t = j.contains("translation") ? vec3(j["translation"], "translation")
                                                       : Eigen::Vector3d::Zero();
    if (j.contains("quaternion")) {
        const auto& q = j["quaternion"];
        if (!q.is_array() || q.size() != 4) throw ConfigError("quaternion must be [qx, qy, qz, qw]");
        Eigen::Quaterniond quat(q[3].get<double>(), q[0].get<double>(), q[1].get<double>(), q[2].get<double>());
        if (quat.norm() < 1e-12) throw ConfigError("zero quaternion");
        Pose p;
        p.rotation = quat.normalized();
        p.translation = t;
        return p;
    }
    if (j.contains("rpy_deg")) {
        const Eigen::Vector3d rpy = vec3(j["rpy_deg"], "rpy_deg");
        return Pose::from_rpy(deg(rpy.x()), deg(rpy.y()), deg(rpy.z()), t);
    }
    Pose p;
    p.translation = t;
    return p;
}

AlbedoTexture parse_texture(const json& j, const Surface& surface) {
    AlbedoTexture tex;
    const std::string kind = j.value("kind", "flat");
    if (kind == "flat") tex.kind = AlbedoTexture::Kind::Flat;
    else if (kind == "checkerboard") tex.kind = AlbedoTexture::Kind::Checkerboard;
    else if (kind == "noise_patch") tex.kind = AlbedoTexture::Kind::NoisePatch;
    else throw ConfigError("unknown texture kind '" + kind + "'");

    if (j.contains("region")) {
        const auto& r = j["region"];
        if (!r.is_array() || r.size() != 4) throw ConfigError("texture region must be [u0, v0, u1, v1]");
        tex.region = {r[0].get<double>(), r[1].get<double>(), r[2].get<double>(), r[3].get<double>()};
    } else {
        tex.region = {-0.5 * surface.width, -0.5 * surface.height, 0.5 * surface.width, 0.5 * surface.height};
    }
    tex.value = j.value("value", tex.value);
    tex.cell = j.value("cell", tex.cell);
    tex.low = j.value("low", tex.low);
    tex.high = j.value("high", tex.high);
    tex.seed = j.value("seed", tex.seed);
    tex.density = j.value("density", tex.density);
    tex.smooth = j.value("smooth", tex.smooth);
    return tex;
}

Surface parse_surface(const json& j) {
    Surface s;
    s.name = j.value("name", "");
    s.width = j.at("width").get<double>();
    s.height = j.at("height").get<double>();
    s.base_albedo = j.value("albedo", s.base_albedo);
    if (j.contains("pose")) {
        s.pose = parse_pose(j["pose"]);
    } else {
        const Eigen::Vector3d c = vec3(j.at("center"), "center");
        Eigen::Vector3d u = vec3(j.at("u_axis"), "u_axis");
        Eigen::Vector3d v = vec3(j.at("v_axis"), "v_axis");
        if (u.norm() < 1e-12) throw ConfigError("surface u_axis is zero");
        u.normalize();
        v -= u * u.dot(v);
        if (v.norm() < 1e-12) throw ConfigError("surface axes are parallel");
        v.normalize();
        Eigen::Matrix3d r;
        r.col(0) = u;
        r.col(1) = v;
        r.col(2) = u.cross(v);
        s.pose = Pose::from_rotation_matrix(r, c);
    }
    if (j.contains("textures"))
        for (const auto& t : j["textures"]) s.textures.push_back(parse_texture(t, s));
    return s;
}

Rig parse_rig(const json& j) {
    Rig rig;
    if (j.contains("camera")) rig.camera_extrinsic = parse_pose(j["camera"]);
    if (j.contains("arm_base")) rig.arm_base_extrinsic = parse_pose(j["arm_base"]);
    rig.pan_direction = j.value("pan_direction", rig.pan_direction);
    rig.tilt_direction = j.value("tilt_direction", rig.tilt_direction);
    if (j.contains("pan_limits_deg")) {
        rig.pan_min = deg(j["pan_limits_deg"][0].get<double>());
        rig.pan_max = deg(j["pan_limits_deg"][1].get<double>());
    }
    if (j.contains("tilt_limits_deg")) {
        rig.tilt_min = deg(j["tilt_limits_deg"][0].get<double>());
        rig.tilt_max = deg(j["tilt_limits_deg"][1].get<double>());
    }
    if (std::abs(rig.pan_direction) != 1.0 || std::abs(rig.tilt_direction) != 1.0)
        throw ConfigError("servo directions must be +1 or -1");
    if (!(rig.pan_min < rig.pan_max) || !(rig.tilt_min < rig.tilt_max))
        throw ConfigError("rig joint limits must be increasing");
    return rig;
}

TimedPose parse_sample(const json& j) {
    TimedPose s;
    s.timestamp = j.at("t").get<double>();
    if (j.contains("pose")) {
        s.pose = parse_pose(j["pose"]);
    } else {
        const Eigen::Vector3d p = vec3(j.at("position"), "position");
        s.pose = Pose::from_rpy(0.0, 0.0, deg(j.value("yaw_deg", 0.0)), p);
    }
    return s;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("scene file is not valid JSON: ") + e.what());
    }
    try {
        if (j.value("format", "") != kSceneFormat) throw ConfigError("scene file must declare format 'alight-scene'");
        if (j.value("version", 0) != kSceneVersion)
            throw ConfigError("unsupported scene file version " + std::to_string(j.value("version", 0)));

        Scenario out;
        Scene& scene = out.scene;
        scene.name = j.value("name", "");
        scene.ambient = j.value("ambient", scene.ambient);
        scene.lit_ambient = j.value("lit_ambient", scene.lit_ambient);
        scene.noise_sigma = j.value("noise_sigma", scene.noise_sigma);
        scene.rng_seed = j.value("rng_seed", scene.rng_seed);
        if (j.contains("spotlight")) {
            const auto& sp = j["spotlight"];
            scene.spot.power = sp.value("power", scene.spot.power);
            if (sp.contains("cone_full_angle_deg")) scene.spot.cone_full_angle = deg(sp["cone_full_angle_deg"].get<double>());
            if (sp.contains("edge_softness_deg")) scene.spot.edge_softness = deg(sp["edge_softness_deg"].get<double>());
        }
        if (j.contains("surfaces"))
            for (const auto& s : j["surfaces"]) scene.surfaces.push_back(parse_surface(s));
        if (j.contains("rig")) out.rig = parse_rig(j["rig"]);
        if (j.contains("trajectory"))
            for (const auto& s : j["trajectory"]) out.trajectory.samples.push_back(parse_sample(s));

        scene.validate();
        if (!out.trajectory.samples.empty()) out.trajectory.validate();
        return out;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scene file: ") + e.what());
    } catch (const InvalidInputError& e) {
        throw ConfigError(std::string("scene file: ") + e.what());
    }
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scene file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

}  // namespace alight::sim
