// Stand-in external enhancer: reads a PGM on stdin and writes one on stdout.
//   pgm_filter identity | invert | shrink | garbage | fail | sleep <ms>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <iterator>
#include <string>
#include <thread>
#include <vector>

#include "alight/core/image_io.hpp"

int main(int argc, char** argv) {
    const std::string mode = argc > 1 ? argv[1] : "identity";
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    if (mode == "fail") return 3;
    if (mode == "sleep") {
        std::this_thread::sleep_for(std::chrono::milliseconds(argc > 2 ? std::atoi(argv[2]) : 10000));
        return 0;
    }
    if (mode == "garbage") {
        std::fputs("not an image\n", stdout);
        return 0;
    }

    alight::GrayImage image = alight::decode_pgm(bytes);
    if (mode == "invert") {
        for (auto& v : image.pixels()) v = static_cast<std::uint8_t>(255 - v);
    } else if (mode == "shrink") {
        alight::GrayImage smaller(image.width() - 1, image.height());
        for (int y = 0; y < smaller.height(); ++y)
            for (int x = 0; x < smaller.width(); ++x) smaller.at(x, y) = image.at(x, y);
        image = std::move(smaller);
    }
    const auto out = alight::encode_pgm(image);
    std::fwrite(out.data(), 1, out.size(), stdout);
    return 0;
}
