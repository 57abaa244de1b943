#include "alight/enhance/enhancer.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace alight::enhance {

void ClassicalEnhancerConfig::validate() const {
    if (!(gamma > 0.0)) throw InvalidInputError("gamma must be positive");
    if (!(clip_low >= 0.0 && clip_low < clip_high && clip_high <= 100.0))
        throw InvalidInputError("clip percentiles must satisfy 0 <= low < high <= 100");
}

int percentile_value(const GrayImage& image, double percentile) {
    if (image.empty()) throw InvalidInputError("percentile of an empty image");
    std::array<std::size_t, 256> hist{};
    for (auto v : image.pixels()) ++hist[v];
    const auto n = static_cast<double>(image.size());
    const auto rank = static_cast<std::size_t>(std::clamp(std::ceil(percentile / 100.0 * n), 1.0, n));
    std::size_t cumulative = 0;
    for (int v = 0; v < 256; ++v) {
        cumulative += hist[v];
        if (cumulative >= rank) return v;
    }
    return 255;
}

Frame classical_enhance(const Frame& frame, const ClassicalEnhancerConfig& config) {
    config.validate();
    Frame out = frame;
    out.enhanced = true;
    if (frame.intensity.empty()) return out;

    const int lo = percentile_value(frame.intensity, config.clip_low);
    const int hi = percentile_value(frame.intensity, config.clip_high);
    const bool degenerate = hi <= lo;

    std::array<std::uint8_t, 256> lut{};
    for (int v = 0; v < 256; ++v) {
        double x = degenerate ? v / 255.0 : (v - lo) / static_cast<double>(hi - lo);
        x = std::clamp(x, 0.0, 1.0);
        lut[v] = static_cast<std::uint8_t>(std::lround(255.0 * std::pow(x, config.gamma)));
    }
    auto src = frame.intensity.pixels();
    auto dst = out.intensity.pixels();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = lut[src[i]];
    return out;
}

ClassicalEnhancer::ClassicalEnhancer(ClassicalEnhancerConfig config) : config_(config) { config_.validate(); }

Frame ClassicalEnhancer::enhance(const Frame& frame) { return classical_enhance(frame, config_); }

}  // namespace alight::enhance
