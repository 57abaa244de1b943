#pragma once

namespace alight {

/// Continuous pixel coordinate; integer values sit on pixel centres.
struct PixelPoint {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const PixelPoint&, const PixelPoint&) = default;
};

/// Row-major ordering (y first, then x).
inline bool row_major_less(const PixelPoint& a, const PixelPoint& b) {
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
}

}  // namespace alight
