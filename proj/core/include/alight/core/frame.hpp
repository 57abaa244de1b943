#pragma once

#include <cstdint>
#include <optional>

#include "alight/core/image.hpp"

namespace alight {

struct Frame {
    std::int64_t index = 0;
    double timestamp = 0.0;
    GrayImage intensity;
    std::optional<DepthImage> depth;
    /// Set by enhancers. Odometry counts any enhanced frame it receives.
    bool enhanced = false;

    int width() const { return intensity.width(); }
    int height() const { return intensity.height(); }
};

}  // namespace alight
