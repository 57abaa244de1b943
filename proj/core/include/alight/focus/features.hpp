#pragma once

#include <span>
#include <vector>

#include "alight/core/frame.hpp"
#include "alight/core/pixel.hpp"

namespace alight::focus {

struct Keypoint {
    PixelPoint position;
    /// Minimum eigenvalue of the smoothed structure tensor, intensity²/px².
    double response = 0.0;
};

struct DetectorParams {
    double threshold = 40.0;
    int nms_radius = 3;
    /// Pixels closer than this to the image edge are never reported.
    int border = 6;
    /// Keep only the strongest N (0 = unlimited); output stays row-major.
    std::size_t max_keypoints = 0;
};

/// Corner response map (structure-tensor minimum eigenvalue, 5×5 binomial
/// window over Sobel gradients). Border pixels hold 0.
std::vector<double> corner_response(const GrayImage& image);

/// Corners above threshold after non-maximum suppression in a square window
/// of radius nms_radius, refined to sub-pixel by 1-D parabola fits. Sorted
/// row-major by integer location.
std::vector<Keypoint> detect_features(const GrayImage& image, const DetectorParams& params);
std::vector<Keypoint> detect_features(const Frame& frame, double threshold);

}  // namespace alight::focus
