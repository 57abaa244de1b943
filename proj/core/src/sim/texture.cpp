#include "alight/sim/texture.hpp"

#include <cmath>

#include "alight/core/errors.hpp"
#include "alight/core/rng.hpp"
#include "alight/sim/scene.hpp"

namespace alight::sim {
namespace {

void check_albedo(double a, const char* what) {
    if (!(a >= 0.0 && a <= 1.0)) throw InvalidInputError(std::string(what) + " albedo must lie in [0, 1]");
}

}  // namespace

double AlbedoTexture::lattice(long long iu, long long iv) const {
    const double r = to_unit_open(
        hash_combine(hash_combine(seed, static_cast<std::uint64_t>(iu)), static_cast<std::uint64_t>(iv)));
    return r < density ? high : low;
}

double AlbedoTexture::smooth_noise(double u, double v) const {
    const double gu = (u - region.u0) / cell - 0.5;
    const double gv = (v - region.v0) / cell - 0.5;
    const auto iu = static_cast<long long>(std::floor(gu));
    const auto iv = static_cast<long long>(std::floor(gv));
    auto fade = [](double t) { return t * t * (3.0 - 2.0 * t); };
    const double tu = fade(gu - static_cast<double>(iu));
    const double tv = fade(gv - static_cast<double>(iv));
    const double a = lattice(iu, iv) + tu * (lattice(iu + 1, iv) - lattice(iu, iv));
    const double b = lattice(iu, iv + 1) + tu * (lattice(iu + 1, iv + 1) - lattice(iu, iv + 1));
    return a + tv * (b - a);
}

double AlbedoTexture::evaluate(double u, double v) const {
    switch (kind) {
        case Kind::Flat:
            return value;
        case Kind::Checkerboard: {
            const auto iu = static_cast<long long>(std::floor((u - region.u0) / cell));
            const auto iv = static_cast<long long>(std::floor((v - region.v0) / cell));
            return ((iu + iv) & 1) == 0 ? high : low;
        }
        case Kind::NoisePatch: {
            if (smooth) return smooth_noise(u, v);
            return lattice(static_cast<long long>(std::floor((u - region.u0) / cell)),
                           static_cast<long long>(std::floor((v - region.v0) / cell)));
        }
    }
    return value;
}

void AlbedoTexture::validate() const {
    if (!(region.u1 > region.u0) || !(region.v1 > region.v0))
        throw InvalidInputError("texture region must have positive extent");
    switch (kind) {
        case Kind::Flat:
            check_albedo(value, "flat texture");
            break;
        case Kind::Checkerboard:
        case Kind::NoisePatch:
            if (!(cell > 0.0)) throw InvalidInputError("texture cell size must be positive");
            check_albedo(low, "texture low");
            check_albedo(high, "texture high");
            if (kind == Kind::NoisePatch && !(density >= 0.0 && density <= 1.0))
                throw InvalidInputError("noise-patch density must lie in [0, 1]");
            break;
    }
}

double Surface::albedo_at(double u, double v) const {
    for (auto it = textures.rbegin(); it != textures.rend(); ++it)
        if (it->region.contains(u, v)) return it->evaluate(u, v);
    return base_albedo;
}

void Surface::validate() const {
    if (!(width > 0.0) || !(height > 0.0))
        throw InvalidInputError("surface '" + name + "' must have positive extent");
    check_albedo(base_albedo, "surface base");
    for (const auto& t : textures) t.validate();
}

double SpotLight::cone_weight(double off_axis_angle) const {
    const double half = 0.5 * cone_full_angle;
    if (off_axis_angle <= half) return 1.0;
    if (edge_softness <= 0.0 || off_axis_angle >= half + edge_softness) return 0.0;
    const double t = (off_axis_angle - half) / edge_softness;
    return 1.0 - t * t * (3.0 - 2.0 * t);
}

void SpotLight::validate() const {
    if (!(cone_full_angle > 0.0 && cone_full_angle < std::numbers::pi))
        throw InvalidInputError("spotlight cone angle must lie in (0, pi)");
    if (!(power >= 0.0)) throw InvalidInputError("spotlight power must be non-negative");
    if (!(edge_softness >= 0.0)) throw InvalidInputError("spotlight edge softness must be non-negative");
}

void Scene::validate() const {
    for (const auto& s : surfaces) s.validate();
    if (!(ambient >= 0.0) || !(lit_ambient >= 0.0))
        throw InvalidInputError("ambient irradiance must be non-negative");
    if (!(noise_sigma >= 0.0)) throw InvalidInputError("noise sigma must be non-negative");
    spot.validate();
}

}  // namespace alight::sim
