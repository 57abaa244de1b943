#include "alight/odom/odometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace alight::odom {
namespace {

struct Patch {
    std::vector<double> values;  // zero-mean, unit-norm
    bool valid = false;
};

Patch extract(const GrayImage& img, const PixelPoint& p, int size) {
    Patch out;
    const int r = size / 2;
    const int cx = static_cast<int>(std::lround(p.x));
    const int cy = static_cast<int>(std::lround(p.y));
    if (cx - r < 0 || cy - r < 0 || cx + r >= img.width() || cy + r >= img.height()) return out;
    out.values.reserve(static_cast<std::size_t>(size * size));
    double sum = 0.0;
    for (int y = cy - r; y <= cy + r; ++y)
        for (int x = cx - r; x <= cx + r; ++x) {
            out.values.push_back(img.at(x, y));
            sum += img.at(x, y);
        }
    const double mean = sum / static_cast<double>(out.values.size());
    double norm2 = 0.0;
    for (double& v : out.values) {
        v -= mean;
        norm2 += v * v;
    }
    if (norm2 < 1e-9) return out;
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : out.values) v *= inv;
    out.valid = true;
    return out;
}

double dot(const Patch& a, const Patch& b) {
    if (!a.valid || !b.valid) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * b.values[i];
    return s;
}

// Gauss-Newton alignment of the reference patch (integer anchor in `prev`)
// against `cur` with bilinear sampling, photometrically normalised per step.
// Starts from `guess`; nullopt when it diverges or leaves the image.
std::optional<PixelPoint> refine(const GrayImage& prev, const PixelPoint& anchor, const GrayImage& cur,
                                 const PixelPoint& guess, int size) {
    const int r = size / 2;
    const int ax = static_cast<int>(anchor.x), ay = static_cast<int>(anchor.y);
    const std::size_t n = static_cast<std::size_t>(size * size);
    std::vector<double> t(n), v(n), gx(n), gy(n);
    double tm = 0.0;
    for (int j = 0; j < size; ++j)
        for (int i = 0; i < size; ++i) tm += t[j * size + i] = prev.at(ax - r + i, ay - r + j);
    tm /= static_cast<double>(n);
    double ts = 0.0;
    for (double& x : t) {
        x -= tm;
        ts += x * x;
    }
    if (ts < 1e-9) return std::nullopt;
    ts = std::sqrt(ts);
    for (double& x : t) x /= ts;

    double dx = guess.x - anchor.x, dy = guess.y - anchor.y;
    const double dx0 = dx, dy0 = dy;
    const int g = size + 2;
    std::vector<double> grid(static_cast<std::size_t>(g * g));
    for (int iter = 0; iter < 12; ++iter) {
        const double ox = ax + dx, oy = ay + dy;
        if (ox - r - 1 < 0 || oy - r - 1 < 0 || ox + r + 2 >= cur.width() || oy + r + 2 >= cur.height())
            return std::nullopt;
        // Every sample shares the same fractional offset.
        const int bx = static_cast<int>(std::floor(ox)), by = static_cast<int>(std::floor(oy));
        const double fx = ox - bx, fy = oy - by;
        const double w00 = (1 - fx) * (1 - fy), w10 = fx * (1 - fy), w01 = (1 - fx) * fy, w11 = fx * fy;
        for (int j = 0; j < g; ++j) {
            const int y = by - r - 1 + j;
            for (int i = 0; i < g; ++i) {
                const int x = bx - r - 1 + i;
                grid[static_cast<std::size_t>(j * g + i)] = w00 * cur.at(x, y) + w10 * cur.at(x + 1, y) +
                                                            w01 * cur.at(x, y + 1) + w11 * cur.at(x + 1, y + 1);
            }
        }
        double vm = 0.0;
        for (int j = 0; j < size; ++j)
            for (int i = 0; i < size; ++i) {
                const std::size_t k = static_cast<std::size_t>(j * size + i);
                const std::size_t c = static_cast<std::size_t>((j + 1) * g + i + 1);
                vm += v[k] = grid[c];
                gx[k] = 0.5 * (grid[c + 1] - grid[c - 1]);
                gy[k] = 0.5 * (grid[c + g] - grid[c - g]);
            }
        vm /= static_cast<double>(n);
        double vs = 0.0;
        for (double& x : v) {
            x -= vm;
            vs += x * x;
        }
        if (vs < 1e-9) return std::nullopt;
        vs = std::sqrt(vs);
        double h00 = 0, h01 = 0, h11 = 0, b0 = 0, b1 = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const double e = v[k] / vs - t[k];
            const double jx = gx[k] / vs, jy = gy[k] / vs;
            h00 += jx * jx;
            h01 += jx * jy;
            h11 += jy * jy;
            b0 += jx * e;
            b1 += jy * e;
        }
        const double det = h00 * h11 - h01 * h01;
        if (!(det > 1e-12)) return std::nullopt;
        const double sx = -(h11 * b0 - h01 * b1) / det;
        const double sy = -(h00 * b1 - h01 * b0) / det;
        dx += sx;
        dy += sy;
        if (std::abs(dx - dx0) > 2.0 || std::abs(dy - dy0) > 2.0) return std::nullopt;
        if (sx * sx + sy * sy < 1e-6) break;
    }
    return PixelPoint{anchor.x + dx, anchor.y + dy};
}

}  // namespace

double patch_ncc(const GrayImage& a, const PixelPoint& pa, const GrayImage& b, const PixelPoint& pb,
                 int patch_size) {
    return dot(extract(a, pa, patch_size), extract(b, pb, patch_size));
}

std::vector<Match> match_features(const GrayImage& prev, std::span<const Keypoint> prev_keypoints,
                                  const GrayImage& cur, std::span<const Keypoint> cur_keypoints,
                                  const MatcherParams& params) {
    std::vector<Patch> prev_patches, cur_patches;
    prev_patches.reserve(prev_keypoints.size());
    cur_patches.reserve(cur_keypoints.size());
    for (const auto& k : prev_keypoints) prev_patches.push_back(extract(prev, k.position, params.patch_size));
    for (const auto& k : cur_keypoints) cur_patches.push_back(extract(cur, k.position, params.patch_size));

    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    const double r2 = params.search_radius * params.search_radius;
    std::vector<std::size_t> forward(prev_keypoints.size(), kNone);
    std::vector<double> forward_score(prev_keypoints.size(), -2.0);
    std::vector<std::size_t> backward(cur_keypoints.size(), kNone);
    std::vector<double> backward_score(cur_keypoints.size(), -2.0);

    for (std::size_t i = 0; i < prev_keypoints.size(); ++i) {
        if (!prev_patches[i].valid) continue;
        for (std::size_t j = 0; j < cur_keypoints.size(); ++j) {
            const double dx = cur_keypoints[j].position.x - prev_keypoints[i].position.x;
            const double dy = cur_keypoints[j].position.y - prev_keypoints[i].position.y;
            if (dx * dx + dy * dy > r2 || !cur_patches[j].valid) continue;
            const double s = dot(prev_patches[i], cur_patches[j]);
            if (s > forward_score[i]) {
                forward_score[i] = s;
                forward[i] = j;
            }
            if (s > backward_score[j]) {
                backward_score[j] = s;
                backward[j] = i;
            }
        }
    }

    std::vector<Match> out;
    for (std::size_t i = 0; i < prev_keypoints.size(); ++i) {
        const std::size_t j = forward[i];
        if (j == kNone || backward[j] != i || forward_score[i] < params.min_score) continue;
        const PixelPoint anchor{std::round(prev_keypoints[i].position.x), std::round(prev_keypoints[i].position.y)};
        const auto at = refine(prev, anchor, cur, cur_keypoints[j].position, params.patch_size);
        if (!at) continue;
        out.push_back({anchor, *at, forward_score[i], i, j});
    }
    return out;
}

std::vector<Match> match_features(const GrayImage& prev, std::span<const Keypoint> prev_keypoints,
                                  const GrayImage& cur, const focus::DetectorParams& detector,
                                  const MatcherParams& params) {
    const auto cur_keypoints = focus::detect_features(cur, detector);
    return match_features(prev, prev_keypoints, cur, cur_keypoints, params);
}

}  // namespace alight::odom
