#pragma once

#include <cstdint>

namespace alight::sim {

/// Axis-aligned rectangle in surface-local (u, v) meters.
struct Rect {
    double u0 = 0.0, v0 = 0.0, u1 = 0.0, v1 = 0.0;
    bool contains(double u, double v) const { return u >= u0 && u <= u1 && v >= v0 && v <= v1; }
};

/// Albedo pattern applied to a region of a surface. Evaluation is a pure
/// function of the parameters and the local coordinates.
struct AlbedoTexture {
    enum class Kind { Flat, Checkerboard, NoisePatch };

    Kind kind = Kind::Flat;
    Rect region;
    /// Flat: the albedo.
    double value = 0.5;
    /// Checkerboard and noise-patch: cell edge length in meters.
    double cell = 0.25;
    double low = 0.1;
    double high = 0.9;
    /// Noise-patch: each cell is `high` with probability `density`, else `low`.
    std::uint64_t seed = 0;
    double density = 0.5;
    /// Noise-patch: blend the cell values smoothly between cell centres
    /// instead of hard cell edges.
    bool smooth = false;

    double evaluate(double u, double v) const;
    void validate() const;

private:
    double lattice(long long iu, long long iv) const;
    double smooth_noise(double u, double v) const;
};

}  // namespace alight::sim
