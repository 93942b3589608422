#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace meterocr {

struct Rect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;
};

/// 8-bit single-channel raster, row-major. 0 = black, 255 = white.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    std::uint8_t at(int x, int y) const { return pixels[std::size_t(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return pixels[std::size_t(y) * width + x]; }
    std::size_t size() const { return pixels.size(); }
    bool empty() const { return pixels.empty(); }
};

/// Boolean raster, row-major. Nonzero = foreground (ink after thresholding).
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;

    std::uint8_t at(int x, int y) const { return bits[std::size_t(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return bits[std::size_t(y) * width + x]; }
    std::size_t size() const { return bits.size(); }
    bool empty() const { return bits.empty(); }
};

GrayImage make_gray(int width, int height, std::uint8_t fill = 0);
BinaryImage make_binary(int width, int height, bool fill = false);

bool rect_within(const Rect& r, int width, int height);

/// Reads a binary PGM ("P5", maxval 255). Pixel values are taken verbatim,
/// no scaling. Comment lines in the header are tolerated.
GrayImage load_pgm(const std::string& path);

/// Writes `P5\n<w> <h>\n255\n` followed by the raw pixel payload.
void save_pgm(const GrayImage& img, const std::string& path);

GrayImage crop(const GrayImage& img, const Rect& r);

}  // namespace meterocr
