#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "alight/core/image.hpp"

namespace alight {

/// Binary PGM (P5, maxval 255). Comments in the header are accepted on read.
std::vector<std::uint8_t> encode_pgm(const GrayImage& image);
GrayImage decode_pgm(std::span<const std::uint8_t> bytes);

void write_pgm(const std::filesystem::path& path, const GrayImage& image);
GrayImage read_pgm(const std::filesystem::path& path);

/// Raw float32 little-endian raster, row-major, no header. Dimensions come
/// from the companion PGM.
void write_depth_raw(const std::filesystem::path& path, const DepthImage& depth);
DepthImage read_depth_raw(const std::filesystem::path& path, int width, int height);

}  // namespace alight
