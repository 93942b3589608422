#include "meterocr/reference.hpp"

#include <algorithm>
#include <queue>

namespace meterocr::ref {

Histogram256 histogram(const GrayImage& img) {
    if (img.empty()) throw std::invalid_argument("histogram: empty image");
    Histogram256 h;
    for (std::uint8_t p : img.pixels) h.counts[p]++;
    return h;
}

int otsu_threshold(const Histogram256& h) {
    if (h.total() == 0) throw std::invalid_argument("otsu_threshold: empty histogram");
    int best_t = 0;
    double best_var = -1.0;
    for (int t = 0; t < 256; ++t) {
        std::uint64_t w0 = 0, s0 = 0, w1 = 0, s1 = 0;
        for (int v = 0; v <= t; ++v) {
            w0 += h.counts[v];
            s0 += std::uint64_t(v) * h.counts[v];
        }
        for (int v = t + 1; v < 256; ++v) {
            w1 += h.counts[v];
            s1 += std::uint64_t(v) * h.counts[v];
        }
        double var = 0.0;
        if (w0 != 0 && w1 != 0) {
            const double mu0 = double(s0) / double(w0);
            const double mu1 = double(s1) / double(w1);
            const double d = mu0 - mu1;
            var = double(w0) * double(w1) * d * d;
        }
        if (var > best_var) {
            best_var = var;
            best_t = t;
        }
    }
    return best_t;
}

BinaryImage binarize(const GrayImage& img, int threshold) {
    BinaryImage out;
    out.width = img.width;
    out.height = img.height;
    out.bits.resize(img.pixels.size());
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        out.bits[i] = img.pixels[i] <= threshold ? 1 : 0;
    return out;
}

namespace {

void flood(const BinaryImage& bin, std::vector<std::int32_t>& labels, int sx, int sy,
           std::int32_t id, Connectivity conn, std::uint32_t& area, Rect& box) {
    const int w = bin.width, h = bin.height;
    std::queue<std::pair<int, int>> q;
    labels[std::size_t(sy) * w + sx] = id;
    q.push({sx, sy});
    area = 0;
    box = Rect{sx, sy, 1, 1};
    int x0 = sx, x1 = sx, y0 = sy, y1 = sy;
    while (!q.empty()) {
        auto [x, y] = q.front();
        q.pop();
        ++area;
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                if (conn == Connectivity::Four && dx != 0 && dy != 0) continue;
                const int nx = x + dx, ny = y + dy;
                if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                const std::size_t ni = std::size_t(ny) * w + nx;
                if (bin.bits[ni] && labels[ni] == 0) {
                    labels[ni] = id;
                    q.push({nx, ny});
                }
            }
    }
    box = Rect{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

}  // namespace

LabelMap label_components(const BinaryImage& bin, Connectivity conn) {
    LabelMap m;
    m.width = bin.width;
    m.height = bin.height;
    m.labels.assign(bin.bits.size(), 0);
    m.areas.assign(1, 0);
    m.boxes.assign(1, Rect{});
    for (int y = 0; y < bin.height; ++y)
        for (int x = 0; x < bin.width; ++x) {
            const std::size_t i = std::size_t(y) * bin.width + x;
            if (!bin.bits[i] || m.labels[i]) continue;
            std::uint32_t area = 0;
            Rect box;
            flood(bin, m.labels, x, y, ++m.component_count, conn, area, box);
            m.areas.push_back(area);
            m.boxes.push_back(box);
        }
    return m;
}

BinaryImage clear_border(const BinaryImage& bin) {
    if (bin.empty()) return bin;
    BinaryImage out = bin;
    const int w = bin.width, h = bin.height;
    std::queue<std::pair<int, int>> q;
    auto seed = [&](int x, int y) {
        if (out.bits[std::size_t(y) * w + x]) {
            out.bits[std::size_t(y) * w + x] = 0;
            q.push({x, y});
        }
    };
    for (int x = 0; x < w; ++x) {
        seed(x, 0);
        seed(x, h - 1);
    }
    for (int y = 0; y < h; ++y) {
        seed(0, y);
        seed(w - 1, y);
    }
    while (!q.empty()) {
        auto [x, y] = q.front();
        q.pop();
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                const int nx = x + dx, ny = y + dy;
                if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                if (out.bits[std::size_t(ny) * w + nx]) {
                    out.bits[std::size_t(ny) * w + nx] = 0;
                    q.push({nx, ny});
                }
            }
    }
    return out;
}

BinaryImage remove_small(const BinaryImage& bin, int min_area) {
    if (min_area < 1) throw std::invalid_argument("remove_small: min_area must be >= 1");
    const LabelMap m = ref::label_components(bin, Connectivity::Eight);
    BinaryImage out = bin;
    for (std::size_t i = 0; i < out.bits.size(); ++i)
        if (out.bits[i] && m.areas[m.labels[i]] < std::uint32_t(min_area)) out.bits[i] = 0;
    return out;
}

std::vector<double> column_profile(const BinaryImage& bin, const Rect& box) {
    if (!rect_within(box, bin.width, bin.height))
        throw std::invalid_argument("column_profile: box out of bounds");
    std::vector<double> values(std::size_t(box.w), 0.0);
    long long total = 0;
    for (int j = 0; j < box.w; ++j) {
        int c = 0;
        for (int y = 0; y < box.h; ++y) c += bin.at(box.x + j, box.y + y) ? 1 : 0;
        total += c;
        values[std::size_t(j)] = double(c) / double(box.h);
    }
    if (total == 0) throw std::invalid_argument("column_profile: box has no foreground");
    return values;
}

}  // namespace meterocr::ref
