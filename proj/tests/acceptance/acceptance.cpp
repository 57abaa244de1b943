// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Optional arguments select criteria by number, e.g. `acceptance 1 2 5`.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "alight/arm/arm.hpp"
#include "alight/core/image_io.hpp"
#include "alight/enhance/enhancer.hpp"
#include "alight/eval/metrics.hpp"
#include "alight/focus/focus_block.hpp"
#include "alight/focus/tsm.hpp"
#include "alight/odom/odometry.hpp"
#include "alight/pipeline/config.hpp"
#include "alight/pipeline/episode.hpp"
#include "alight/sim/renderer.hpp"
#include "oracles.hpp"

using namespace alight;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int number;
    std::string name;
    double limit_s;
    std::function<Outcome()> body;
};

std::string format(const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

fs::path output_root() {
    static const fs::path root = [] {
        auto d = fs::temp_directory_path() / "alight_acceptance";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return root;
}

Outcome tsm_selection() {
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> px(0, 211), py(0, 199), alpha(0, 1), alpha_pos(0.01, 1), eps(0.01, 2);
    std::uniform_int_distribution<int> cnt(4, 40), num(1, 6);
    auto instance = [&] {
        std::vector<focus::Centroid> c(num(rng));
        for (auto& x : c) x = {{px(rng), py(rng)}, static_cast<std::size_t>(cnt(rng))};
        return c;
    };
    int max_count_bad = 0, nearest_bad = 0, oracle_bad = 0;
    for (int i = 0; i < 1000; ++i) {
        auto c = instance();
        focus::FocusState s{PixelPoint{px(rng), py(rng)}};
        const auto sel = focus::select_target(c, s, {0.0, eps(rng)});
        std::size_t best = 0;
        for (const auto& x : c) best = std::max(best, x.count);
        max_count_bad += c[sel.index].count != best;
    }
    for (int i = 0; i < 1000; ++i) {
        auto c = instance();
        for (auto& x : c) x.count = 12;
        const PixelPoint last{px(rng), py(rng)};
        focus::FocusState s{last};
        const auto sel = focus::select_target(c, s, {alpha_pos(rng), eps(rng)});
        std::size_t nearest = 0;
        for (std::size_t k = 1; k < c.size(); ++k)
            if (std::hypot(c[k].position.x - last.x, c[k].position.y - last.y) <
                std::hypot(c[nearest].position.x - last.x, c[nearest].position.y - last.y))
                nearest = k;
        nearest_bad += sel.index != nearest;
    }
    for (int i = 0; i < 1000; ++i) {
        const auto c = instance();
        std::optional<PixelPoint> last;
        if (i % 4) last = PixelPoint{px(rng), py(rng)};
        const focus::TsmParams p{alpha(rng), eps(rng)};
        focus::FocusState s{last};
        oracle_bad += focus::select_target(c, s, p).index != oracle::tsm_argmax(c, last, p.alpha, p.epsilon, false);
    }
    return {max_count_bad == 0 && nearest_bad == 0 && oracle_bad == 0,
            format("alpha=0 mismatches %d/1000, equal-count mismatches %d/1000, oracle mismatches %d/1000",
                   max_count_bad, nearest_bad, oracle_bad)};
}

Outcome metrics_oracle() {
    std::mt19937_64 rng(2002);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const Trajectory gt = oracle::random_trajectory(rng, 200);
        const Trajectory est = oracle::perturbed(rng, gt, 0.05);
        const auto want = oracle::brute_report(gt, est);
        const auto got = eval::evaluate(gt, est, 0);
        std::vector<double> ates, ares;
        for (std::size_t k = 0; k < gt.size(); ++k) {
            const auto one = eval::ape(gt.samples[k].pose, est.samples[k].pose);
            const auto ref = oracle::ape(gt.samples[k].pose, est.samples[k].pose);
            worst = std::max({worst, std::abs(one.ate - ref.ate), std::abs(one.are - ref.are)});
            ates.push_back(one.ate);
            ares.push_back(one.are);
        }
        worst = std::max({worst, std::abs(got.ate_rmse - want.ate_rmse), std::abs(got.are_rmse - want.are_rmse),
                          std::abs(got.r_t - want.r_t), std::abs(eval::rmse(ates) - oracle::rmse(ates)),
                          std::abs(eval::trajectory_ratio(gt, est) - want.r_t)});
    }
    const Trajectory gt = oracle::random_trajectory(rng, 200);
    const auto id = eval::evaluate(gt, gt, 0);
    const bool exact = id.ate_rmse == 0.0 && id.are_rmse == 0.0 && id.r_t == 1.0;
    return {worst <= 1e-9 && exact, format("max deviation %.3g over 100 x 200 poses, identity gives (%g, %g, %g)", worst,
                                           id.ate_rmse, id.are_rmse, id.r_t)};
}

std::vector<PointPair> cloud(std::mt19937_64& rng, const Pose& t, int n) {
    std::uniform_real_distribution<double> u(-2, 2), z(1, 6);
    const Eigen::Matrix4d m = oracle::to_matrix(t);
    std::vector<PointPair> out;
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector3d p(u(rng), u(rng), z(rng));
        out.emplace_back(p, (m * p.homogeneous()).head<3>());
    }
    return out;
}

double gap(const Pose& a, const Pose& b) {
    return (oracle::to_matrix(a) - oracle::to_matrix(b)).cwiseAbs().maxCoeff();
}

Outcome rigid_estimation() {
    std::mt19937_64 rng(3003);
    double clean = 0, noisy = 0;
    for (int i = 0; i < 50; ++i) {
        const Pose t = oracle::random_pose(rng, 2.0);
        clean = std::max(clean, gap(odom::estimate_rigid(cloud(rng, t, 30)).transform, t));
    }
    int wrong_inliers = 0;
    for (int i = 0; i < 50; ++i) {
        const Pose t = oracle::random_pose(rng, 2.0);
        auto pairs = cloud(rng, t, 35);
        std::uniform_real_distribution<double> u(-4, 4);
        for (int k = 0; k < 15; ++k)
            pairs.emplace_back(Eigen::Vector3d(u(rng), u(rng), 4 + u(rng)), Eigen::Vector3d(u(rng), u(rng), 4 + u(rng)));
        odom::RansacParams params;
        params.seed = 77 + i;
        const auto est = odom::estimate_rigid(pairs, params);
        noisy = std::max(noisy, gap(est.transform, t));
        wrong_inliers += est.inliers != 35;
    }
    return {clean <= 1e-9 && noisy <= 1e-6,
            format("noiseless max error %.3g, 30%% outliers max error %.3g, inlier count off in %d/50", clean, noisy,
                   wrong_inliers)};
}

Outcome arm_properties() {
    std::mt19937_64 rng(4004);
    std::uniform_real_distribution<double> px(-20, 230), py(-20, 220);
    const CameraModel cam;
    const arm::ArmConfig cfg;
    arm::ArmController ctl(cfg);
    double worst_delta = 0;
    int out_of_bounds = 0;
    arm::JointState prev = ctl.state();
    for (int i = 0; i < 10000; ++i) {
        if (i % 3 == 0) ctl.post_target(arm::pixel_to_ppm({px(rng), py(rng)}, cam, cfg));
        const arm::JointState s = ctl.tick(i);
        worst_delta = std::max({worst_delta, std::abs(s.ppm_j1 - prev.ppm_j1), std::abs(s.ppm_j2 - prev.ppm_j2)});
        out_of_bounds += s.ppm_j1 < cfg.ppm_min || s.ppm_j1 > cfg.ppm_max || s.ppm_j2 < cfg.ppm_min ||
                         s.ppm_j2 > cfg.ppm_max;
        prev = s;
    }
    const double w = cam.width - 1.0, h = cam.height - 1.0;
    bool corners = true;
    for (auto [x, y, j1, j2] : {std::tuple{0.0, 0.0, 1000.0, 1000.0}, std::tuple{w, 0.0, 2000.0, 1000.0},
                                std::tuple{0.0, h, 1000.0, 2000.0}, std::tuple{w, h, 2000.0, 2000.0}}) {
        const auto p = arm::pixel_to_ppm({x, y}, cam, cfg);
        corners &= p.ppm_j1 == j1 && p.ppm_j2 == j2 && !p.clamped;
    }
    return {worst_delta <= cfg.delta_max && out_of_bounds == 0 && corners,
            format("10^4 ticks: max delta %.3f (limit %.1f), %d out of bounds, corners %s", worst_delta,
                   cfg.delta_max, out_of_bounds, corners ? "exact" : "wrong")};
}

Outcome renderer_check() {
    sim::Scene s;
    sim::Surface wall;
    wall.pose = Pose::from_translation(0, 0, 2.0);
    wall.width = wall.height = 6.0;
    wall.base_albedo = 1.0;
    s.surfaces.push_back(wall);
    s.ambient = 0.0;
    s.noise_sigma = 0.0;
    s.spot.power = 2.0;
    const CameraModel cam;
    const Pose beam = Pose::from_axis_angle(Eigen::Vector3d::UnitY(), -std::numbers::pi / 2);
    const Frame clean = sim::render(s, Pose::identity(), beam, cam, {});
    const int centre = clean.intensity.at(static_cast<int>(cam.cx), static_cast<int>(cam.cy));

    s.noise_sigma = 2.0;
    sim::RenderOptions o;
    o.noise_seed = 5;
    o.supersample = 2;
    const Pose panned = compose(beam, Pose::from_axis_angle(Eigen::Vector3d::UnitZ(), 0.2));
    const Frame f = sim::render(s, Pose::identity(), panned, cam, o);
    const Eigen::Vector3d axis = panned.rotation * Eigen::Vector3d::UnitX();
    const double limit = 0.5 * s.spot.cone_full_angle + s.spot.edge_softness + std::atan(1.0 / cam.fx);
    int lit = 0, stray = 0;
    for (int y = 0; y < cam.height; ++y)
        for (int x = 0; x < cam.width; ++x) {
            if (f.intensity.at(x, y) <= 5 * s.noise_sigma) continue;
            ++lit;
            const Eigen::Vector3d p = unproject(cam, {double(x), double(y)}, f.depth->at(x, y));
            stray += std::acos(std::clamp(axis.dot(p.normalized()), -1.0, 1.0)) > limit;
        }
    return {std::abs(centre - 128) <= 1 && stray == 0 && lit > 0,
            format("on-axis intensity %d (want 128 +/- 1), %d lit pixels, %d outside the dilated cone", centre, lit,
                   stray)};
}

struct ModeRun {
    pipeline::Mode mode;
    eval::EpisodeReport report;
    double seconds;
};

std::vector<ModeRun> closed_loop(const fs::path& out) {
    const auto config = pipeline::load_config(oracle::data_dir() / "configs" / "corridor_L1.json");
    const auto scenario = sim::load_scenario(config.scene_path);
    std::vector<ModeRun> runs;
    for (auto mode : {pipeline::Mode::AL, pipeline::Mode::FL, pipeline::Mode::LO}) {
        auto c = config;
        c.mode = mode;
        const auto start = std::chrono::steady_clock::now();
        const auto result = pipeline::run_episode(c, scenario);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const fs::path dir = out / pipeline::to_string(mode);
        fs::create_directories(dir);
        pipeline::write_episode(result, dir);
        runs.push_back({mode, result.report, secs});
    }
    return runs;
}

Outcome trend_reproduction() {
    const auto runs = closed_loop(output_root() / "run1");
    const auto& al = runs[0].report;
    const auto& fl = runs[1].report;
    const auto& lo = runs[2].report;
    double slowest = 0;
    for (const auto& r : runs) slowest = std::max(slowest, r.seconds);
    const bool al_ok = al.t_lost == 0 && al.r_t >= 0.9 && al.r_t <= 1.1;
    const bool fl_ok = fl.t_lost >= 1 || fl.ate_rmse >= 2 * al.ate_rmse;
    const bool order = lo.ate_rmse <= al.ate_rmse && al.ate_rmse <= fl.ate_rmse;
    return {al_ok && fl_ok && order && slowest < 60.0,
            format("AL ate %.4f m R_t %.3f T_lost %zu; FL ate %.4f m T_lost %zu; LO ate %.4f m; slowest episode %.1f s",
                   al.ate_rmse, al.r_t, al.t_lost, fl.ate_rmse, fl.t_lost, lo.ate_rmse, slowest)};
}

Outcome determinism() {
    const fs::path a = output_root() / "run1", b = output_root() / "run2";
    if (!fs::exists(a)) closed_loop(a);
    closed_loop(b);
    int files = 0, differing = 0;
    for (const auto& entry : fs::recursive_directory_iterator(a)) {
        if (!entry.is_regular_file()) continue;
        const fs::path other = b / fs::relative(entry.path(), a);
        std::ifstream fa(entry.path(), std::ios::binary), fb(other, std::ios::binary);
        std::stringstream sa, sb;
        sa << fa.rdbuf();
        sb << fb.rdbuf();
        ++files;
        differing += !fb || sa.str() != sb.str();
    }
    return {files > 0 && differing == 0, format("%d artifact files compared, %d differ", files, differing)};
}

Outcome enhancement_efficacy() {
    Frame dim;
    dim.intensity = read_pgm(oracle::data_dir() / "frames" / "dim_checkerboard.pgm");
    const auto peak = *std::max_element(dim.intensity.pixels().begin(), dim.intensity.pixels().end());
    const auto detector = focus::FocusParams{}.detector;
    const auto before = focus::detect_features(dim.intensity, detector).size();
    const auto after = focus::detect_features(enhance::classical_enhance(dim, {}).intensity, detector).size();
    return {peak <= 30 && after >= 5 * std::max<std::size_t>(before, 1),
            format("peak %d, keypoints %zu before, %zu after (need >= %zu)", int(peak), before, after,
                   5 * std::max<std::size_t>(before, 1))};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    const std::vector<Criterion> criteria = {
        {1, "target selection metric", 5, tsm_selection},
        {2, "trajectory metrics oracle", 5, metrics_oracle},
        {3, "rigid estimation", 10, rigid_estimation},
        {4, "arm controller properties", 2, arm_properties},
        {5, "renderer analytic check", 2, renderer_check},
        {6, "closed-loop trend on corridor_L1", 3 * 60, trend_reproduction},
        {7, "closed-loop determinism", 6 * 60, determinism},
        {8, "enhancement efficacy", 1, enhancement_efficacy},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.count(c.number)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs >= c.limit_s) {
            o.pass = false;
            o.detail += format(" [over time limit %.0f s]", c.limit_s);
        }
        failures += !o.pass;
        std::printf("%s  criterion %d  %-34s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", c.number, c.name.c_str(), secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
