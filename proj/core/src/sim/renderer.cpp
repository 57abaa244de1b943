#include "alight/sim/renderer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "alight/core/rng.hpp"

namespace alight::sim {
namespace {

struct PreparedSurface {
    const Surface* surface;
    Eigen::Vector3d center;
    Eigen::Vector3d axis_u;
    Eigen::Vector3d axis_v;
    Eigen::Vector3d normal;
    double half_w;
    double half_h;
};

std::vector<PreparedSurface> prepare(const Scene& scene) {
    std::vector<PreparedSurface> out;
    out.reserve(scene.surfaces.size());
    for (const auto& s : scene.surfaces) {
        const Eigen::Matrix3d r = s.pose.rotation_matrix();
        out.push_back({&s, s.pose.translation, r.col(0), r.col(1), r.col(2), 0.5 * s.width, 0.5 * s.height});
    }
    return out;
}

struct LocalHit {
    double s = std::numeric_limits<double>::infinity();
    const PreparedSurface* prepared = nullptr;
    double u = 0.0, v = 0.0;
};

LocalHit nearest(const std::vector<PreparedSurface>& surfaces, const Eigen::Vector3d& origin,
                 const Eigen::Vector3d& dir) {
    LocalHit best;
    for (const auto& ps : surfaces) {
        const double denom = ps.normal.dot(dir);
        if (std::abs(denom) < 1e-12) continue;
        const double s = ps.normal.dot(ps.center - origin) / denom;
        if (!(s > 1e-9) || s >= best.s) continue;
        const Eigen::Vector3d rel = origin + s * dir - ps.center;
        const double u = ps.axis_u.dot(rel);
        const double v = ps.axis_v.dot(rel);
        if (std::abs(u) > ps.half_w || std::abs(v) > ps.half_h) continue;
        best = {s, &ps, u, v};
    }
    return best;
}

// Ray caster for a fixed origin; the per-surface origin terms are hoisted.
class Caster {
public:
    Caster(const std::vector<PreparedSurface>& surfaces, const Eigen::Vector3d& origin) {
        for (const auto& ps : surfaces) {
            const Eigen::Vector3d rel = origin - ps.center;
            terms_.push_back({&ps, ps.normal.dot(ps.center - origin), ps.axis_u.dot(rel), ps.axis_v.dot(rel)});
        }
    }

    LocalHit cast(const Eigen::Vector3d& dir) const {
        LocalHit best;
        for (const auto& t : terms_) {
            const double denom = t.ps->normal.dot(dir);
            if (std::abs(denom) < 1e-12) continue;
            const double s = t.num / denom;
            if (!(s > 1e-9) || s >= best.s) continue;
            const double u = t.u0 + s * t.ps->axis_u.dot(dir);
            if (std::abs(u) > t.ps->half_w) continue;
            const double v = t.v0 + s * t.ps->axis_v.dot(dir);
            if (std::abs(v) > t.ps->half_h) continue;
            best = {s, t.ps, u, v};
        }
        return best;
    }

private:
    struct Term {
        const PreparedSurface* ps;
        double num, u0, v0;
    };
    std::vector<Term> terms_;
};

double spot_term(const SpotLight& spot, const Eigen::Vector3d& point, const Eigen::Vector3d& normal,
                 const Eigen::Vector3d& beam_origin, const Eigen::Vector3d& beam_axis) {
    const Eigen::Vector3d to_point = point - beam_origin;
    const double r2 = to_point.squaredNorm();
    if (r2 < 1e-18) return 0.0;
    const double r = std::sqrt(r2);
    const double cos_axis = std::clamp(beam_axis.dot(to_point) / r, -1.0, 1.0);
    const double half = 0.5 * spot.cone_full_angle;
    double weight = 1.0;
    if (cos_axis < std::cos(half)) {
        if (cos_axis <= std::cos(std::min(half + spot.edge_softness, std::numbers::pi))) return 0.0;
        weight = spot.cone_weight(std::acos(cos_axis));
    }
    if (weight <= 0.0) return 0.0;
    const double lambert = std::max(0.0, -normal.dot(to_point) / r);
    return spot.power * weight * lambert / r2;
}

}  // namespace

BeamPoseResult beam_pose(const Pose& robot_pose, const Pose& arm_base, BeamAngles joints, BeamAngles min,
                         BeamAngles max) {
    BeamPoseResult out;
    out.applied.pan = std::clamp(joints.pan, min.pan, max.pan);
    out.applied.tilt = std::clamp(joints.tilt, min.tilt, max.tilt);
    out.clamped = out.applied.pan != joints.pan || out.applied.tilt != joints.tilt;
    const Pose pan = Pose::from_axis_angle(Eigen::Vector3d::UnitZ(), out.applied.pan);
    const Pose tilt = Pose::from_axis_angle(Eigen::Vector3d::UnitY(), out.applied.tilt);
    out.pose = compose(compose(robot_pose, arm_base), compose(pan, tilt));
    return out;
}

BeamPoseResult rig_beam_pose(const Rig& rig, const Pose& robot_pose, BeamAngles servo) {
    const BeamAngles clamped{std::clamp(servo.pan, rig.pan_min, rig.pan_max),
                             std::clamp(servo.tilt, rig.tilt_min, rig.tilt_max)};
    const BeamAngles joints{rig.pan_direction * clamped.pan, rig.tilt_direction * clamped.tilt};
    BeamPoseResult out = beam_pose(robot_pose, rig.arm_base_extrinsic, joints);
    out.clamped = clamped.pan != servo.pan || clamped.tilt != servo.tilt;
    return out;
}

std::optional<RayHit> intersect(const Scene& scene, const Eigen::Vector3d& origin,
                                const Eigen::Vector3d& direction) {
    const auto surfaces = prepare(scene);
    const LocalHit hit = nearest(surfaces, origin, direction);
    if (!hit.prepared) return std::nullopt;
    RayHit out;
    out.point = origin + hit.s * direction;
    out.distance = hit.s * direction.norm();
    out.normal = hit.prepared->normal.dot(direction) > 0.0 ? -hit.prepared->normal : hit.prepared->normal;
    out.surface = hit.prepared->surface;
    out.albedo = hit.prepared->surface->albedo_at(hit.u, hit.v);
    return out;
}

double irradiance(const Scene& scene, const Eigen::Vector3d& point, const Eigen::Vector3d& normal,
                  const Pose* beam, double ambient) {
    double e = ambient;
    if (beam) e += spot_term(scene.spot, point, normal, beam->translation, beam->rotation * Eigen::Vector3d::UnitX());
    return e;
}

Frame render(const Scene& scene, const Pose& camera_pose, const Pose& beam_world, const CameraModel& camera,
             const RenderOptions& options) {
    const auto surfaces = prepare(scene);
    const int ss = std::max(1, options.supersample);
    const double ambient = options.ambient.value_or(scene.ambient);
    const bool spot_on = options.spot_enabled && scene.spot.power > 0.0;
    const Eigen::Vector3d beam_origin = beam_world.translation;
    const Eigen::Vector3d beam_axis = beam_world.rotation * Eigen::Vector3d::UnitX();
    const Eigen::Matrix3d cam_r = camera_pose.rotation_matrix();
    const Eigen::Vector3d origin = camera_pose.translation;
    const Caster caster(surfaces, origin);
    const std::uint64_t frame_key = hash_combine(options.noise_seed, static_cast<std::uint64_t>(options.frame_index));

    Frame frame;
    frame.index = options.frame_index;
    frame.timestamp = options.timestamp;
    frame.intensity = GrayImage(camera.width, camera.height);
    frame.depth = DepthImage(camera.width, camera.height, kNoDepth);

    auto shade = [&](const LocalHit& hit, const Eigen::Vector3d& dir) {
        const PreparedSurface& ps = *hit.prepared;
        const double albedo = ps.surface->albedo_at(hit.u, hit.v);
        double e = ambient;
        if (spot_on) {
            const Eigen::Vector3d point = origin + hit.s * dir;
            const Eigen::Vector3d normal = ps.normal.dot(dir) > 0.0 ? Eigen::Vector3d(-ps.normal) : ps.normal;
            e += spot_term(scene.spot, point, normal, beam_origin, beam_axis);
        }
        return albedo * e;
    };

    for (int y = 0; y < camera.height; ++y) {
        for (int x = 0; x < camera.width; ++x) {
            const Eigen::Vector3d centre_dir = cam_r * pixel_ray(camera, x, y);
            const LocalHit centre = caster.cast(centre_dir);
            if (centre.prepared) frame.depth->at(x, y) = static_cast<float>(centre.s);

            double radiance = 0.0;
            if (ss == 1) {
                if (centre.prepared) radiance = shade(centre, centre_dir);
            } else {
                for (int sy = 0; sy < ss; ++sy) {
                    for (int sx = 0; sx < ss; ++sx) {
                        const double px = x + (sx + 0.5) / ss - 0.5;
                        const double py = y + (sy + 0.5) / ss - 0.5;
                        const Eigen::Vector3d dir = cam_r * pixel_ray(camera, px, py);
                        const LocalHit hit = caster.cast(dir);
                        if (hit.prepared) radiance += shade(hit, dir);
                    }
                }
                radiance /= ss * ss;
            }

            double value = std::round(radiance * camera.exposure_gain * 255.0);
            if (scene.noise_sigma > 0.0) {
                const std::uint64_t key = hash_combine(hash_combine(frame_key, static_cast<std::uint64_t>(x)),
                                                       static_cast<std::uint64_t>(y));
                value = std::round(value + scene.noise_sigma * counter_gaussian(key));
            }
            frame.intensity.at(x, y) = static_cast<std::uint8_t>(std::clamp(value, 0.0, 255.0));
        }
    }
    return frame;
}

Frame render(const Scene& scene, const Rig& rig, const Pose& robot_pose, BeamAngles servo,
             const CameraModel& camera, const RenderOptions& options) {
    const Pose camera_pose = compose(robot_pose, rig.camera_extrinsic);
    const Pose beam = rig_beam_pose(rig, robot_pose, servo).pose;
    return render(scene, camera_pose, beam, camera, options);
}

}  // namespace alight::sim
