#include "meterocr/preproc.hpp"

#include <algorithm>
#include <cstring>

#include "meterocr/topo.hpp"

namespace meterocr {

namespace {

constexpr std::size_t kParallelPixels = std::size_t(1) << 16;

}  // namespace

std::vector<GrayImage> split_cells(const GrayImage& window, const MeterGeometry& g) {
    if (g.cell_count < 1) throw std::invalid_argument("split_cells: cell_count must be >= 1");
    if (g.cell_gap < 0) throw std::invalid_argument("split_cells: cell_gap must be >= 0");
    const int usable = window.width - (g.cell_count - 1) * g.cell_gap;
    const int cw = usable / g.cell_count;
    if (cw < 1) throw std::invalid_argument("split_cells: cells would be narrower than 1px");
    std::vector<GrayImage> cells;
    cells.reserve(std::size_t(g.cell_count));
    for (int i = 0; i < g.cell_count; ++i)
        cells.push_back(crop(window, Rect{i * (cw + g.cell_gap), 0, cw, window.height}));
    return cells;
}

Histogram256 histogram(const GrayImage& img) {
    if (img.empty()) throw std::invalid_argument("histogram: empty image");
    const std::size_t n = img.pixels.size();
    const std::uint8_t* px = img.pixels.data();
    std::uint32_t counts[256] = {0};
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : counts[:256]) if (n >= kParallelPixels)
#endif
    for (long long i = 0; i < (long long)n; ++i) counts[px[i]]++;
    Histogram256 h;
    std::copy(counts, counts + 256, h.counts.begin());
    return h;
}

int otsu_threshold(const Histogram256& h) {
    std::uint64_t total = 0, sum = 0;
    for (int v = 0; v < 256; ++v) {
        total += h.counts[v];
        sum += std::uint64_t(v) * h.counts[v];
    }
    if (total == 0) throw std::invalid_argument("otsu_threshold: empty histogram");

    // Streaming moments; variance scaled by total^2 (argmax unchanged).
    std::uint64_t w0 = 0, s0 = 0;
    int best_t = 0;
    double best_var = -1.0;
    for (int t = 0; t < 256; ++t) {
        w0 += h.counts[t];
        s0 += std::uint64_t(t) * h.counts[t];
        const std::uint64_t w1 = total - w0;
        const std::uint64_t s1 = sum - s0;
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
    const std::size_t n = img.pixels.size();
    const std::uint8_t* px = img.pixels.data();
    std::uint8_t* bits = out.bits.data();
#ifdef _OPENMP
#pragma omp parallel for if (n >= kParallelPixels)
#endif
    for (long long i = 0; i < (long long)n; ++i) bits[i] = px[i] <= threshold ? 1 : 0;
    return out;
}

GrayImage invert(const GrayImage& img) {
    GrayImage out = img;
    for (auto& p : out.pixels) p = std::uint8_t(255 - p);
    return out;
}

BinaryImage clear_border(const BinaryImage& bin) {
    if (bin.empty()) return bin;
    const LabelMap m = label_components(bin, Connectivity::Eight);
    std::vector<char> drop(std::size_t(m.component_count) + 1, 0);
    const int w = bin.width, h = bin.height;
    for (int x = 0; x < w; ++x) {
        if (m.labels[x]) drop[m.labels[x]] = 1;
        if (m.labels[std::size_t(h - 1) * w + x]) drop[m.labels[std::size_t(h - 1) * w + x]] = 1;
    }
    for (int y = 0; y < h; ++y) {
        if (m.labels[std::size_t(y) * w]) drop[m.labels[std::size_t(y) * w]] = 1;
        if (m.labels[std::size_t(y) * w + w - 1]) drop[m.labels[std::size_t(y) * w + w - 1]] = 1;
    }
    BinaryImage out = bin;
    const std::size_t n = bin.bits.size();
#ifdef _OPENMP
#pragma omp parallel for if (n >= kParallelPixels)
#endif
    for (long long i = 0; i < (long long)n; ++i)
        if (out.bits[i] && drop[m.labels[i]]) out.bits[i] = 0;
    return out;
}

BinaryImage remove_small(const BinaryImage& bin, int min_area) {
    if (min_area < 1) throw std::invalid_argument("remove_small: min_area must be >= 1");
    if (bin.empty() || min_area == 1) return bin;
    const LabelMap m = label_components(bin, Connectivity::Eight);
    BinaryImage out = bin;
    const std::size_t n = bin.bits.size();
#ifdef _OPENMP
#pragma omp parallel for if (n >= kParallelPixels)
#endif
    for (long long i = 0; i < (long long)n; ++i)
        if (out.bits[i] && m.areas[m.labels[i]] < std::uint32_t(min_area)) out.bits[i] = 0;
    return out;
}

BinaryImage fill_holes(const BinaryImage& bin, int max_hole_area) {
    if (max_hole_area < 1 || bin.empty()) return bin;
    BinaryImage inv;
    inv.width = bin.width;
    inv.height = bin.height;
    inv.bits.resize(bin.bits.size());
    for (std::size_t i = 0; i < bin.bits.size(); ++i) inv.bits[i] = bin.bits[i] ? 0 : 1;
    const LabelMap m = label_components(inv, Connectivity::Four);
    std::vector<char> fill(std::size_t(m.component_count) + 1, 0);
    const int w = bin.width, h = bin.height;
    for (std::int32_t id = 1; id <= m.component_count; ++id)
        fill[id] = m.areas[id] < std::uint32_t(max_hole_area) ? 1 : 0;
    for (int x = 0; x < w; ++x) {
        if (m.labels[x]) fill[m.labels[x]] = 0;
        if (m.labels[std::size_t(h - 1) * w + x]) fill[m.labels[std::size_t(h - 1) * w + x]] = 0;
    }
    for (int y = 0; y < h; ++y) {
        if (m.labels[std::size_t(y) * w]) fill[m.labels[std::size_t(y) * w]] = 0;
        if (m.labels[std::size_t(y) * w + w - 1]) fill[m.labels[std::size_t(y) * w + w - 1]] = 0;
    }
    BinaryImage out = bin;
    for (std::size_t i = 0; i < bin.bits.size(); ++i)
        if (!out.bits[i] && fill[m.labels[i]]) out.bits[i] = 1;
    return out;
}

}  // namespace meterocr
