#include "alight/core/image_io.hpp"

#include <bit>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace alight {
namespace {

class HeaderReader {
public:
    explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::string token() {
        skip_space_and_comments();
        std::string out;
        while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_])) out.push_back(char(bytes_[pos_++]));
        if (out.empty()) throw IoError("truncated PGM header");
        return out;
    }

    int integer() {
        const std::string t = token();
        int value = 0;
        for (char c : t) {
            if (!std::isdigit(static_cast<unsigned char>(c))) throw IoError("malformed PGM header field: " + t);
            value = value * 10 + (c - '0');
            if (value > 1'000'000) throw IoError("PGM header value too large");
        }
        return value;
    }

    /// Exactly one whitespace byte separates maxval from the raster.
    std::size_t raster_offset() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) throw IoError("malformed PGM header");
        return pos_ + 1;
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

std::vector<std::uint8_t> encode_pgm(const GrayImage& image) {
    const std::string header = "P5\n" + std::to_string(image.width()) + " " +
                               std::to_string(image.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), image.pixels().begin(), image.pixels().end());
    return out;
}

GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
    HeaderReader reader(bytes);
    if (reader.token() != "P5") throw IoError("not a binary PGM (P5)");
    const int width = reader.integer();
    const int height = reader.integer();
    const int maxval = reader.integer();
    if (maxval != 255) throw IoError("only maxval 255 PGM is supported");
    if (width <= 0 || height <= 0) throw IoError("PGM has empty dimensions");
    const std::size_t offset = reader.raster_offset();
    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (bytes.size() < offset + count) throw IoError("truncated PGM raster");
    GrayImage image(width, height);
    std::memcpy(image.pixels().data(), bytes.data() + offset, count);
    return image;
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
    const auto bytes = encode_pgm(image);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

GrayImage read_pgm(const std::filesystem::path& path) { return decode_pgm(slurp(path)); }

void write_depth_raw(const std::filesystem::path& path, const DepthImage& depth) {
    static_assert(sizeof(float) == 4);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    for (float v : depth.pixels()) {
        std::uint32_t bits = std::bit_cast<std::uint32_t>(v);
        if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap32(bits);
        out.write(reinterpret_cast<const char*>(&bits), 4);
    }
}

DepthImage read_depth_raw(const std::filesystem::path& path, int width, int height) {
    const auto bytes = slurp(path);
    DepthImage depth(width, height);
    if (bytes.size() != depth.size() * 4) throw IoError("depth raster size mismatch in " + path.string());
    auto px = depth.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
        std::uint32_t bits;
        std::memcpy(&bits, bytes.data() + 4 * i, 4);
        if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap32(bits);
        px[i] = std::bit_cast<float>(bits);
    }
    return depth;
}

}  // namespace alight
