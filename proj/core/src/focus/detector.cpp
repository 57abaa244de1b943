#include "alight/focus/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace alight::focus {
namespace {

constexpr int kMargin = 3;  // 1 for Sobel, 2 for the 5×5 window.

void binomial_blur(std::vector<double>& data, int w, int h, std::vector<double>& scratch) {
    static constexpr double k[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
    scratch.assign(data.size(), 0.0);
    for (int y = 0; y < h; ++y)
        for (int x = 2; x < w - 2; ++x) {
            const double* row = &data[static_cast<std::size_t>(y) * w + x - 2];
            scratch[static_cast<std::size_t>(y) * w + x] =
                k[0] * row[0] + k[1] * row[1] + k[2] * row[2] + k[3] * row[3] + k[4] * row[4];
        }
    std::fill(data.begin(), data.end(), 0.0);
    for (int y = 2; y < h - 2; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = 0; i < 5; ++i) acc += k[i] * scratch[static_cast<std::size_t>(y - 2 + i) * w + x];
            data[static_cast<std::size_t>(y) * w + x] = acc;
        }
}

double parabola_offset(double left, double centre, double right) {
    const double denom = left - 2.0 * centre + right;
    if (denom >= 0.0) return 0.0;
    return std::clamp(0.5 * (left - right) / denom, -0.5, 0.5);
}

}  // namespace

std::vector<double> corner_response(const GrayImage& image) {
    const int w = image.width();
    const int h = image.height();
    const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    std::vector<double> response(n, 0.0);
    if (w < 2 * kMargin + 1 || h < 2 * kMargin + 1) return response;

    std::vector<double> ixx(n, 0.0), iyy(n, 0.0), ixy(n, 0.0), scratch;
    for (int y = 1; y < h - 1; ++y) {
        for (int x = 1; x < w - 1; ++x) {
            auto p = [&](int dx, int dy) { return static_cast<double>(image.at(x + dx, y + dy)); };
            const double gx = (p(1, -1) + 2.0 * p(1, 0) + p(1, 1) - p(-1, -1) - 2.0 * p(-1, 0) - p(-1, 1)) / 8.0;
            const double gy = (p(-1, 1) + 2.0 * p(0, 1) + p(1, 1) - p(-1, -1) - 2.0 * p(0, -1) - p(1, -1)) / 8.0;
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            ixx[i] = gx * gx;
            iyy[i] = gy * gy;
            ixy[i] = gx * gy;
        }
    }
    binomial_blur(ixx, w, h, scratch);
    binomial_blur(iyy, w, h, scratch);
    binomial_blur(ixy, w, h, scratch);

    for (int y = kMargin; y < h - kMargin; ++y) {
        for (int x = kMargin; x < w - kMargin; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            const double a = ixx[i], c = iyy[i], b = ixy[i];
            const double half_trace = 0.5 * (a + c);
            const double disc = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
            response[i] = std::max(0.0, half_trace - disc);
        }
    }
    return response;
}

std::vector<Keypoint> detect_features(const GrayImage& image, const DetectorParams& params) {
    const int w = image.width();
    const int h = image.height();
    const std::vector<double> r = corner_response(image);
    const int border = std::max(params.border, kMargin);
    const int rad = std::max(params.nms_radius, 0);
    auto at = [&](int x, int y) { return r[static_cast<std::size_t>(y) * w + x]; };

    std::vector<Keypoint> out;
    for (int y = border; y < h - border; ++y) {
        for (int x = border; x < w - border; ++x) {
            const double v = at(x, y);
            if (!(v > params.threshold)) continue;
            bool is_max = true;
            for (int dy = -rad; dy <= rad && is_max; ++dy) {
                const int yy = y + dy;
                if (yy < 0 || yy >= h) continue;
                for (int dx = -rad; dx <= rad; ++dx) {
                    const int xx = x + dx;
                    if ((dx == 0 && dy == 0) || xx < 0 || xx >= w) continue;
                    const double nv = at(xx, yy);
                    // Equal responses: the earlier pixel in row-major order wins.
                    if (nv > v || (nv == v && (dy < 0 || (dy == 0 && dx < 0)))) {
                        is_max = false;
                        break;
                    }
                }
            }
            if (!is_max) continue;
            const double ox = parabola_offset(at(x - 1, y), v, at(x + 1, y));
            const double oy = parabola_offset(at(x, y - 1), v, at(x, y + 1));
            out.push_back({{x + ox, y + oy}, v});
        }
    }

    if (params.max_keypoints > 0 && out.size() > params.max_keypoints) {
        std::vector<std::size_t> order(out.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return out[a].response > out[b].response; });
        order.resize(params.max_keypoints);
        std::sort(order.begin(), order.end());
        std::vector<Keypoint> kept;
        kept.reserve(order.size());
        for (std::size_t i : order) kept.push_back(out[i]);
        out = std::move(kept);
    }
    return out;
}

std::vector<Keypoint> detect_features(const Frame& frame, double threshold) {
    return detect_features(frame.intensity, DetectorParams{.threshold = threshold});
}

}  // namespace alight::focus
