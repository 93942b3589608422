#include "meterocr/raster.hpp"

#include <cctype>
#include <fstream>

namespace meterocr {

namespace {

constexpr std::size_t kMaxPixels = std::size_t(1) << 28;

void check_dims(int width, int height) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("image dimensions must be >= 1");
    if (std::size_t(width) * std::size_t(height) > kMaxPixels)
        throw std::invalid_argument("image too large");
}

// Skips whitespace and '#' comment lines, then reads one unsigned decimal token.
bool read_header_uint(std::istream& in, unsigned& out) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    if (c == EOF || !std::isdigit(c)) return false;
    unsigned long v = 0;
    while (c != EOF && std::isdigit(c)) {
        v = v * 10 + unsigned(c - '0');
        if (v > 0xFFFFFFFFul) return false;
        c = in.get();
    }
    if (c != EOF) in.unget();
    out = unsigned(v);
    return true;
}

}  // namespace

GrayImage make_gray(int width, int height, std::uint8_t fill) {
    check_dims(width, height);
    GrayImage img;
    img.width = width;
    img.height = height;
    img.pixels.assign(std::size_t(width) * height, fill);
    return img;
}

BinaryImage make_binary(int width, int height, bool fill) {
    check_dims(width, height);
    BinaryImage img;
    img.width = width;
    img.height = height;
    img.bits.assign(std::size_t(width) * height, fill ? 1 : 0);
    return img;
}

bool rect_within(const Rect& r, int width, int height) {
    return r.w >= 1 && r.h >= 1 && r.x >= 0 && r.y >= 0 && r.x + r.w <= width &&
           r.y + r.h <= height;
}

GrayImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("pgm: cannot open '" + path + "'");

    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (!in || m0 != 'P' || m1 != '5')
        throw std::runtime_error("pgm: bad magic in '" + path + "' (want P5)");

    unsigned w = 0, h = 0, maxval = 0;
    if (!read_header_uint(in, w) || !read_header_uint(in, h) || !read_header_uint(in, maxval))
        throw std::runtime_error("pgm: malformed header in '" + path + "'");
    if (maxval != 255)
        throw std::runtime_error("pgm: unsupported maxval " + std::to_string(maxval) +
                                 " in '" + path + "' (want 255)");
    if (w < 1 || h < 1 || std::size_t(w) * h > kMaxPixels)
        throw std::runtime_error("pgm: bad dimensions in '" + path + "'");

    in.get();  // single whitespace byte after maxval
    if (!in) throw std::runtime_error("pgm: truncated header in '" + path + "'");

    GrayImage img;
    img.width = int(w);
    img.height = int(h);
    img.pixels.resize(std::size_t(w) * h);
    in.read(reinterpret_cast<char*>(img.pixels.data()), std::streamsize(img.pixels.size()));
    if (std::size_t(in.gcount()) != img.pixels.size())
        throw std::runtime_error("pgm: truncated pixel payload in '" + path + "'");
    return img;
}

void save_pgm(const GrayImage& img, const std::string& path) {
    if (img.empty() || img.pixels.size() != std::size_t(img.width) * img.height)
        throw std::invalid_argument("save_pgm: invalid image");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("pgm: cannot write '" + path + "'");
    out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              std::streamsize(img.pixels.size()));
    if (!out) throw std::runtime_error("pgm: write failed for '" + path + "'");
}

GrayImage crop(const GrayImage& img, const Rect& r) {
    if (!rect_within(r, img.width, img.height))
        throw std::invalid_argument("crop: rectangle out of bounds");
    GrayImage out = make_gray(r.w, r.h);
    for (int y = 0; y < r.h; ++y) {
        const std::uint8_t* src = &img.pixels[std::size_t(r.y + y) * img.width + r.x];
        std::uint8_t* dst = &out.pixels[std::size_t(y) * r.w];
        std::copy(src, src + r.w, dst);
    }
    return out;
}

}  // namespace meterocr
