#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "alight/core/image_io.hpp"
#include "alight/enhance/enhancer.hpp"
#include "alight/eval/metrics.hpp"
#include "alight/focus/focus_block.hpp"
#include "alight/pipeline/config.hpp"
#include "alight/pipeline/episode.hpp"
#include "alight/sim/renderer.hpp"

namespace fs = std::filesystem;
using namespace alight;

namespace {

std::vector<pipeline::Mode> parse_modes(const std::string& list) {
    std::vector<pipeline::Mode> modes;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) modes.push_back(pipeline::parse_mode(item));
    if (modes.empty()) throw ConfigError("--modes needs at least one mode");
    return modes;
}

void print_report(const std::string& label, const eval::EpisodeReport& r) {
    std::printf("%-4s ATE %.4f m  ARE %.4f rad  R_t %.4f  T_lost %zu  (%zu poses)\n", label.c_str(), r.ate_rmse,
                r.are_rmse, r.r_t, r.t_lost, r.pairs);
}

int cmd_simulate(const fs::path& config_path, const std::string& mode, const fs::path& out,
                 const fs::path& dump_dir, bool concurrent, std::optional<std::uint64_t> seed) {
    pipeline::PipelineConfig config = pipeline::load_config(config_path);
    if (!mode.empty()) config.mode = pipeline::parse_mode(mode);
    if (seed) config.seed = *seed;
    const sim::Scenario scenario = sim::load_scenario(config.scene_path);
    pipeline::EpisodeResult result;
    if (concurrent) {
        result = pipeline::run_episode_concurrent(config, scenario);
    } else {
        pipeline::FrameSink sink;
        if (!dump_dir.empty()) sink = pipeline::frame_dump_sink(dump_dir);
        result = pipeline::run_episode(config, scenario, sink);
    }
    pipeline::write_episode(result, out);
    std::ofstream(out / "config.json") << pipeline::config_to_json(config) << '\n';
    print_report(pipeline::to_string(config.mode), result.report);
    return 0;
}

int cmd_evaluate(const fs::path& gt_path, const fs::path& est_path, const fs::path& out, double max_dt, bool align,
                 std::size_t t_lost) {
    const Trajectory gt = read_tum(gt_path, TrajectoryKind::GroundTruth);
    const Trajectory est = read_tum(est_path, TrajectoryKind::Estimate);
    const eval::EpisodeReport report = eval::evaluate(gt, est, t_lost, {max_dt, align});
    if (out.empty()) eval::write_report_csv(std::cout, report);
    else eval::write_report_csv(out, report);
    return 0;
}

int cmd_compare(const fs::path& config_path, const std::string& modes, const fs::path& out) {
    const pipeline::PipelineConfig config = pipeline::load_config(config_path);
    const auto list = parse_modes(modes);
    const auto rows = pipeline::compare_modes(config, list);
    if (out.empty()) {
        pipeline::write_comparison_csv(std::cout, rows);
    } else {
        std::ofstream f(out);
        if (!f) throw IoError("cannot write " + out.string());
        pipeline::write_comparison_csv(f, rows);
        for (const auto& r : rows) print_report(pipeline::to_string(r.mode), r.report);
    }
    return 0;
}

int cmd_focus(const fs::path& frames, const fs::path& config_path, const fs::path& out) {
    pipeline::PipelineConfig config;
    if (!config_path.empty()) config = pipeline::load_config(config_path);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(frames))
        if (e.path().extension() == ".pgm") files.push_back(e.path());
    if (files.empty()) throw IoError("no .pgm frames in " + frames.string());
    std::sort(files.begin(), files.end());

    auto enhancer = config.enhancer.kind == pipeline::EnhancerSpec::Kind::External
                        ? std::unique_ptr<enhance::EnhancerPort>(std::make_unique<enhance::FallbackEnhancer>(
                              std::make_unique<enhance::ExternalEnhancer>(config.enhancer.external),
                              std::make_unique<enhance::ClassicalEnhancer>(config.enhancer.classical),
                              [](const std::string& m) { std::cerr << "alight: enhancer fallback: " << m << '\n'; }))
                        : std::make_unique<enhance::ClassicalEnhancer>(config.enhancer.classical);

    std::ofstream file;
    if (!out.empty()) {
        file.open(out);
        if (!file) throw IoError("cannot write " + out.string());
    }
    std::ostream& os = out.empty() ? std::cout : file;
    os << "frame_index,target_x,target_y,centroid_count,score\n";

    std::optional<focus::FocusBlock> block;
    std::int64_t index = 0;
    for (const auto& f : files) {
        Frame frame;
        frame.index = index;
        frame.intensity = read_pgm(f);
        if (!block) {
            CameraModel cam = config.camera;
            cam.width = frame.intensity.width();
            cam.height = frame.intensity.height();
            block.emplace(focus::FocusParams{config.focus_detector, focus::ClusterParams::for_camera(cam), config.tsm});
        }
        const auto result = block->process(enhancer->enhance(frame));
        char line[160];
        if (result.selection)
            std::snprintf(line, sizeof line, "%lld,%.4f,%.4f,%zu,%.9f\n", static_cast<long long>(index),
                          result.selection->target.x, result.selection->target.y, result.centroids.size(),
                          result.selection->score);
        else
            std::snprintf(line, sizeof line, "%lld,,,0,\n", static_cast<long long>(index));
        os << line;
        ++index;
    }
    return 0;
}

int cmd_plot(const fs::path& report_dir, const fs::path& svg) {
    const Trajectory gt = read_tum(report_dir / "gt.tum", TrajectoryKind::GroundTruth);
    const Trajectory est = read_tum(report_dir / "est.tum", TrajectoryKind::Estimate);
    std::string title = report_dir.filename().string();
    if (fs::exists(report_dir / "report.csv")) {
        const auto r = eval::read_report_csv(report_dir / "report.csv");
        char buf[160];
        std::snprintf(buf, sizeof buf, " ATE %.3f m, R_t %.3f, T_lost %zu", r.ate_rmse, r.r_t, r.t_lost);
        title += buf;
    }
    std::ofstream f(svg);
    if (!f) throw IoError("cannot write " + svg.string());
    f << eval::trajectory_svg(gt, est, title);
    return 0;
}

int cmd_render(const fs::path& config_path, double t, double pan_deg, double tilt_deg, bool lit, const fs::path& out) {
    const pipeline::PipelineConfig config = pipeline::load_config(config_path);
    const sim::Scenario scenario = sim::load_scenario(config.scene_path);
    sim::RenderOptions opts;
    opts.supersample = config.supersample;
    opts.timestamp = scenario.trajectory.start_time() + t;
    opts.noise_seed = config.seed;
    if (lit) {
        opts.spot_enabled = false;
        opts.ambient = scenario.scene.lit_ambient;
    }
    const Pose robot = sim::sample_ground_truth(scenario.trajectory, opts.timestamp);
    const Frame f = sim::render(scenario.scene, scenario.rig, robot, {sim::deg(pan_deg), sim::deg(tilt_deg)},
                                config.camera, opts);
    write_pgm(out, f.intensity);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Active-illumination visual odometry testbed"};
    app.require_subcommand(1);

    fs::path config, out, dump, gt, est, frames, report, svg;
    std::string mode, modes = "AL,FL,LO";
    double max_dt = 0.02, t = 0.0, pan = 0.0, tilt = 0.0;
    bool align = false, concurrent = false, lit = false;
    std::size_t t_lost = 0;
    std::optional<std::uint64_t> seed;

    auto* simulate = app.add_subcommand("simulate", "Run one closed-loop episode");
    simulate->add_option("--config", config, "Pipeline config file")->required()->check(CLI::ExistingFile);
    simulate->add_option("--mode", mode, "AL, FL or LO (overrides the config)");
    simulate->add_option("--out", out, "Output directory")->required();
    simulate->add_option("--dump-frames", dump, "Write raw frames and depth here");
    simulate->add_option("--seed", seed, "Override the config seed");
    simulate->add_flag("--concurrent", concurrent, "Free-running focus worker (non-deterministic)");

    auto* evaluate = app.add_subcommand("evaluate", "Score an estimate against ground truth");
    evaluate->add_option("--gt", gt, "Ground-truth TUM file")->required()->check(CLI::ExistingFile);
    evaluate->add_option("--est", est, "Estimated TUM file")->required()->check(CLI::ExistingFile);
    evaluate->add_option("--out", out, "report.csv path (stdout when omitted)");
    evaluate->add_option("--max-dt", max_dt, "Association tolerance, seconds");
    evaluate->add_option("--t-lost", t_lost, "Tracking-loss count to record");
    evaluate->add_flag("--align", align, "Rigidly pre-align the estimate");

    auto* compare = app.add_subcommand("compare", "Run several modes on the same scene and seed");
    compare->add_option("--config", config, "Pipeline config file")->required()->check(CLI::ExistingFile);
    compare->add_option("--modes", modes, "Comma-separated mode list");
    compare->add_option("--out", out, "Comparison CSV path (stdout when omitted)");

    auto* focus_cmd = app.add_subcommand("focus", "Run the focus stage over a directory of PGM frames");
    focus_cmd->add_option("--frames", frames, "Frame directory")->required()->check(CLI::ExistingDirectory);
    focus_cmd->add_option("--config", config, "Pipeline config file")->check(CLI::ExistingFile);
    focus_cmd->add_option("--out", out, "CSV path (stdout when omitted)");

    auto* plot = app.add_subcommand("plot", "Draw ground truth and estimate as SVG");
    plot->add_option("--report", report, "Episode output directory")->required()->check(CLI::ExistingDirectory);
    plot->add_option("--svg", svg, "SVG path")->required();

    auto* render = app.add_subcommand("render", "Render a single frame");
    render->add_option("--config", config, "Pipeline config file")->required()->check(CLI::ExistingFile);
    render->add_option("--t", t, "Seconds after trajectory start");
    render->add_option("--pan", pan, "Servo pan, degrees");
    render->add_option("--tilt", tilt, "Servo tilt, degrees");
    render->add_flag("--lit", lit, "Building lights on, spotlight off");
    render->add_option("--out", out, "PGM path")->required();

    auto* dump_cfg = app.add_subcommand("config", "Print the resolved config with all defaults");
    dump_cfg->add_option("--config", config, "Pipeline config file")->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) return cmd_simulate(config, mode, out, dump, concurrent, seed);
        if (*evaluate) return cmd_evaluate(gt, est, out, max_dt, align, t_lost);
        if (*compare) return cmd_compare(config, modes, out);
        if (*focus_cmd) return cmd_focus(frames, config, out);
        if (*plot) return cmd_plot(report, svg);
        if (*render) return cmd_render(config, t, pan, tilt, lit, out);
        if (*dump_cfg) {
            const auto c = config.empty() ? pipeline::PipelineConfig{} : pipeline::load_config(config);
            std::cout << pipeline::config_to_json(c) << '\n';
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "alight: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "alight: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
