#pragma once

#include <filesystem>
#include <string>

#include "alight/sim/scene.hpp"
#include "alight/sim/trajectory_script.hpp"

namespace alight::sim {

/// Everything a scene file describes.
struct Scenario {
    Scene scene;
    Rig rig;
    TrajectoryScript trajectory;
};

inline constexpr const char* kSceneFormat = "alight-scene";
inline constexpr int kSceneVersion = 1;

/// Parses a scene file (JSON, see docs in README). Throws ConfigError.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace alight::sim
