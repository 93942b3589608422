#include "meterocr/topo.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace meterocr {

namespace {

constexpr std::size_t kParallelPixels = std::size_t(1) << 16;

// Union by smaller root so that a component's final root is the provisional
// label minted at its first pixel in scan order.
inline std::int32_t uf_find(std::vector<std::int32_t>& parent, std::int32_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

inline void uf_union(std::vector<std::int32_t>& parent, std::int32_t a, std::int32_t b) {
    a = uf_find(parent, a);
    b = uf_find(parent, b);
    if (a < b)
        parent[b] = a;
    else if (b < a)
        parent[a] = b;
}

}  // namespace

LabelMap label_components(const BinaryImage& bin, Connectivity conn) {
    const int w = bin.width, h = bin.height;
    const std::size_t n = bin.bits.size();
    LabelMap m;
    m.width = w;
    m.height = h;
    m.labels.assign(n, 0);
    m.areas.assign(1, 0);
    m.boxes.assign(1, Rect{});
    if (n == 0) return m;

    const bool eight = conn == Connectivity::Eight;

    int strips = 1;
#ifdef _OPENMP
    if (n >= kParallelPixels && h >= 8)
        strips = std::max(1, std::min({omp_get_max_threads(), h / 4, 64}));
#endif

    // Each strip mints provisional labels from its own range; range order
    // follows strip order so label values increase with scan position.
    std::vector<int> strip_top(std::size_t(strips) + 1);
    for (int s = 0; s <= strips; ++s) strip_top[s] = int(std::int64_t(h) * s / strips);
    std::vector<std::int64_t> base(std::size_t(strips) + 1);
    base[0] = 1;
    for (int s = 0; s < strips; ++s) {
        const std::int64_t rows = strip_top[s + 1] - strip_top[s];
        base[s + 1] = base[s] + rows * ((w + 1) / 2) + 1;
    }
    std::vector<std::int32_t> parent(std::size_t(base[strips]), 0);
    std::vector<std::int32_t> strip_next(std::size_t(strips), 0);
    std::vector<std::int32_t>& lab = m.labels;

#ifdef _OPENMP
#pragma omp parallel for schedule(static, 1) if (strips > 1)
#endif
    for (int s = 0; s < strips; ++s) {
        std::int32_t next = std::int32_t(base[s]);
        const int r0 = strip_top[s], r1 = strip_top[s + 1];
        for (int y = r0; y < r1; ++y) {
            const std::uint8_t* row = &bin.bits[std::size_t(y) * w];
            std::int32_t* lrow = &lab[std::size_t(y) * w];
            const std::int32_t* urow = y > r0 ? &lab[std::size_t(y - 1) * w] : nullptr;
            for (int x = 0; x < w; ++x) {
                if (!row[x]) {
                    lrow[x] = 0;
                    continue;
                }
                std::int32_t l = 0;
                if (x > 0 && lrow[x - 1]) l = lrow[x - 1];
                if (urow) {
                    const int x0 = eight ? std::max(0, x - 1) : x;
                    const int x1 = eight ? std::min(w - 1, x + 1) : x;
                    for (int ux = x0; ux <= x1; ++ux) {
                        const std::int32_t ul = urow[ux];
                        if (!ul) continue;
                        if (l == 0)
                            l = ul;
                        else if (l != ul)
                            uf_union(parent, l, ul);
                    }
                }
                if (l == 0) {
                    l = next++;
                    parent[l] = l;
                }
                lrow[x] = l;
            }
        }
        strip_next[s] = next;
    }

    // Stitch strip boundaries.
    for (int s = 1; s < strips; ++s) {
        const int y = strip_top[s];
        const std::int32_t* lrow = &lab[std::size_t(y) * w];
        const std::int32_t* urow = &lab[std::size_t(y - 1) * w];
        for (int x = 0; x < w; ++x) {
            if (!lrow[x]) continue;
            const int x0 = eight ? std::max(0, x - 1) : x;
            const int x1 = eight ? std::min(w - 1, x + 1) : x;
            for (int ux = x0; ux <= x1; ++ux)
                if (urow[ux]) uf_union(parent, lrow[x], urow[ux]);
        }
    }

    // Flatten (parents only ever point downward) and number roots in
    // ascending provisional order == first-encounter order.
    std::vector<std::int32_t> ids(parent.size(), 0);
    std::int32_t count = 0;
    for (int s = 0; s < strips; ++s) {
        for (std::int32_t l = std::int32_t(base[s]); l < strip_next[s]; ++l) {
            parent[l] = parent[parent[l]];
            if (parent[l] == l) ids[l] = ++count;
        }
    }
    m.component_count = count;

#ifdef _OPENMP
#pragma omp parallel for if (n >= kParallelPixels)
#endif
    for (long long i = 0; i < (long long)n; ++i)
        if (lab[i]) lab[i] = ids[parent[lab[i]]];

    m.areas.assign(std::size_t(count) + 1, 0);
    m.boxes.assign(std::size_t(count) + 1, Rect{});
    for (int y = 0; y < h; ++y) {
        const std::int32_t* lrow = &lab[std::size_t(y) * w];
        for (int x = 0; x < w; ++x) {
            const std::int32_t id = lrow[x];
            if (!id) continue;
            Rect& b = m.boxes[id];
            if (m.areas[id] == 0) {
                b = Rect{x, y, 1, 1};
            } else {
                const int x1 = std::max(b.x + b.w, x + 1);
                const int y1 = std::max(b.y + b.h, y + 1);
                b.x = std::min(b.x, x);
                b.y = std::min(b.y, y);
                b.w = x1 - b.x;
                b.h = y1 - b.y;
            }
            m.areas[id]++;
        }
    }
    return m;
}

HoleFeatures hole_features(const BinaryImage& bin) {
    BinaryImage inv;
    inv.width = bin.width;
    inv.height = bin.height;
    inv.bits.resize(bin.bits.size());
    for (std::size_t i = 0; i < bin.bits.size(); ++i) inv.bits[i] = bin.bits[i] ? 0 : 1;

    const LabelMap bg = label_components(inv, Connectivity::Four);
    std::vector<char> open(std::size_t(bg.component_count) + 1, 0);
    const int w = bin.width, h = bin.height;
    for (int x = 0; x < w; ++x) {
        if (bg.labels[x]) open[bg.labels[x]] = 1;
        if (bg.labels[std::size_t(h - 1) * w + x]) open[bg.labels[std::size_t(h - 1) * w + x]] = 1;
    }
    for (int y = 0; y < h; ++y) {
        if (bg.labels[std::size_t(y) * w]) open[bg.labels[std::size_t(y) * w]] = 1;
        if (bg.labels[std::size_t(y) * w + w - 1]) open[bg.labels[std::size_t(y) * w + w - 1]] = 1;
    }

    std::vector<double> sx(std::size_t(bg.component_count) + 1, 0.0);
    std::vector<double> sy(std::size_t(bg.component_count) + 1, 0.0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const std::int32_t id = bg.labels[std::size_t(y) * w + x];
            if (id && !open[id]) {
                sx[id] += x;
                sy[id] += y;
            }
        }

    HoleFeatures f;
    for (std::int32_t id = 1; id <= bg.component_count; ++id) {
        if (open[id]) continue;
        const double a = double(bg.areas[id]);
        f.centroids.emplace_back((sx[id] / a + 0.5) / double(w), (sy[id] / a + 0.5) / double(h));
    }
    f.hole_count = int(f.centroids.size());
    return f;
}

int disambiguate_5689(const MatchRanking& ranking, const HoleFeatures& f, double margin) {
    const int top = ranking.best();
    if (top != 5 && top != 6 && top != 8 && top != 9)
        throw std::invalid_argument("disambiguate_5689: top-1 not in {5,6,8,9}");
    switch (f.hole_count) {
        case 0:
            return 5;
        case 2:
            return 8;
        case 1: {
            const double cy = f.centroids[0].second;
            if (cy > 0.5 + margin) return 6;
            if (cy < 0.5 - margin) return 9;
            // Ambiguous band: keep the better ranked of {6,9}.
            return ranking.error_of(6) <= ranking.error_of(9) ? 6 : 9;
        }
        default:
            return top;
    }
}

}  // namespace meterocr
