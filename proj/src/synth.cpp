#include "meterocr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "meterocr/config.hpp"

namespace meterocr {

namespace {

// Glyphs are unions of axis-aligned strokes on the unit square. Each digit's
// identity is carried by full- or half-height vertical strokes at distinct x
// positions (a column projection reads those like a barcode, and a horizontal
// cut through the glyph leaves them intact), joined by thin bars. Every glyph
// is one 8-connected component, every row of the glyph box carries ink, and
// hole topology matches the odometer font: one hole in 0, 4, 6 (low) and
// 9 (high), two in 8, none elsewhere.
const std::vector<GlyphRect> kGlyphs[10] = {
    // 0: ring, slightly narrower strokes than 8 and no waist bar
    {{0.00, 0.04, 0.18, 0.96}, {0.82, 0.04, 1.00, 0.96}, {0.10, 0.00, 0.90, 0.10},
     {0.10, 0.90, 0.90, 1.00}},
    // 1: bar left of center
    {{0.36, 0.00, 0.58, 1.00}},
    // 2: top bar, right shoulder, staircase down to the left, base bar
    {{0.02, 0.00, 1.00, 0.10}, {0.64, 0.06, 0.90, 0.42}, {0.34, 0.36, 0.74, 0.70},
     {0.04, 0.64, 0.44, 0.94}, {0.02, 0.90, 1.00, 1.00}},
    // 3: three bars on a full right-edge vertical
    {{0.02, 0.00, 1.00, 0.10}, {0.42, 0.45, 1.00, 0.55}, {0.02, 0.90, 1.00, 1.00},
     {0.78, 0.00, 1.00, 1.00}},
    // 4: closed top: left stub, lintel, inset right vertical, crossbar
    {{0.02, 0.00, 0.24, 0.50}, {0.02, 0.00, 0.74, 0.10}, {0.52, 0.00, 0.74, 1.00},
     {0.00, 0.44, 1.00, 0.58}},
    // 5: upper-left stroke, lower-right edge stroke, three bars
    {{0.00, 0.00, 1.00, 0.10}, {0.00, 0.06, 0.22, 0.52}, {0.00, 0.44, 0.96, 0.56},
     {0.72, 0.50, 0.94, 0.96}, {0.00, 0.90, 0.92, 1.00}},
    // 6: full left spine, inset lower-right stroke closing the low bowl
    {{0.00, 0.00, 0.22, 1.00}, {0.08, 0.00, 0.78, 0.10}, {0.08, 0.44, 0.92, 0.56},
     {0.64, 0.50, 0.88, 1.00}, {0.08, 0.90, 0.92, 1.00}},
    // 7: top bar with an inset right stem
    {{0.00, 0.00, 1.00, 0.10}, {0.62, 0.06, 0.86, 1.00}},
    // 8: both edge verticals and three full bars, two holes
    {{0.00, 0.00, 0.22, 1.00}, {0.78, 0.00, 1.00, 1.00}, {0.00, 0.00, 1.00, 0.10},
     {0.00, 0.45, 1.00, 0.55}, {0.00, 0.90, 1.00, 1.00}},
    // 9: 6 rotated half a turn: full right spine, inset upper-left stroke
    {{0.78, 0.00, 1.00, 1.00}, {0.22, 0.90, 0.92, 1.00}, {0.08, 0.44, 0.92, 0.56},
     {0.12, 0.00, 0.36, 0.50}, {0.08, 0.00, 0.92, 0.10}},
};

struct CellLayout {
    int margin_x;
    int margin_y;
};

CellLayout cell_layout(const SynthSpec& spec) {
    return CellLayout{std::max(1, int(std::lround(0.125 * spec.cell_w))),
                      std::max(1, int(std::lround(0.05 * spec.cell_h)))};
}

// Pixels whose center falls in [a, b); degenerate spans still get one pixel.
void pixel_span(double a, double b, int limit, int& i0, int& i1) {
    i0 = int(std::ceil(a - 0.5));
    i1 = int(std::floor(b - 0.5 - 1e-9));
    if (i1 < i0) i0 = i1 = int(std::floor((a + b) * 0.5));
    i0 = std::max(0, i0);
    i1 = std::min(limit - 1, i1);
}

// Draws one glyph shifted down by dy rows, clipped to rows [clip_top, clip_bot).
// Returns ink rows drawn via row_ink (size cell_h, incremented per pixel).
void draw_glyph(BinaryImage& mask, int digit, const SynthSpec& spec, int dy, int clip_top,
                int clip_bot, std::vector<int>& row_ink) {
    const CellLayout lay = cell_layout(spec);
    const double gx = lay.margin_x;
    const double gy = lay.margin_y;
    const double gw = spec.cell_w - 2.0 * lay.margin_x;
    const double gh = spec.cell_h - 2.0 * lay.margin_y;
    for (const GlyphRect& r : glyph_rects(digit)) {
        int x0, x1, y0, y1;
        pixel_span(gx + r.x0 * gw, gx + r.x1 * gw, spec.cell_w, x0, x1);
        pixel_span(gy + r.y0 * gh + dy, gy + r.y1 * gh + dy, spec.cell_h, y0, y1);
        y0 = std::max(y0, clip_top);
        y1 = std::min(y1, clip_bot - 1);
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x) {
                if (!mask.at(x, y)) {
                    mask.at(x, y) = 1;
                    row_ink[std::size_t(y)]++;
                }
            }
    }
}

int ink_row_count(const std::vector<int>& row_ink) {
    int n = 0;
    for (int c : row_ink) n += c > 0 ? 1 : 0;
    return n;
}

int label_min_rows(int cell_h) {
    return std::max(1, int(std::ceil(kHalfLabelMinFrag * cell_h - 1e-9)));
}

std::mt19937 make_stream(std::uint32_t seed, std::uint64_t stream) {
    std::seed_seq sq{seed, std::uint32_t(stream & 0xffffffffu), std::uint32_t(stream >> 32),
                     0x9e3779b9u};
    return std::mt19937(sq);
}

double uniform01(std::mt19937& g) {
    const std::uint64_t u = (std::uint64_t(g()) << 32) | g();
    return double(u >> 11) * (1.0 / 9007199254740992.0);
}

double gauss(std::mt19937& g) {
    const double u1 = (double((std::uint64_t(g()) << 32 | g()) >> 11) + 1.0) *
                      (1.0 / 9007199254740992.0);
    const double u2 = uniform01(g);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
}

void apply_noise(GrayImage& img, double sigma, double salt_pepper, std::mt19937& rng) {
    if (sigma <= 0.0 && salt_pepper <= 0.0) return;
    for (auto& p : img.pixels) {
        int v = p;
        if (sigma > 0.0) v = int(std::lround(v + sigma * gauss(rng)));
        v = std::clamp(v, 0, 255);
        if (salt_pepper > 0.0) {
            const double u = uniform01(rng);
            if (u < salt_pepper * 0.5)
                v = 0;
            else if (u < salt_pepper)
                v = 255;
        }
        p = std::uint8_t(v);
    }
}

void validate_spec(const SynthSpec& spec) {
    if (spec.cell_w < kMinCellW || spec.cell_h < kMinCellH)
        throw std::invalid_argument("synth: cell geometry too small to render");
    if (spec.separator_rows < 1) throw std::invalid_argument("synth: separator_rows must be >= 1");
    if (spec.border_px < 1) throw std::invalid_argument("synth: border_px must be >= 1");
    for (const auto& w : spec.reading) {
        if (w.digit < 0 || w.digit > 9) throw std::invalid_argument("synth: digit out of range");
        if (w.rolling && (w.offset <= 0.0 || w.offset >= 1.0))
            throw std::invalid_argument("synth: rolling offset must lie in (0,1)");
    }
}

// Geometry and truth label for one wheel; noise is applied by the caller.
std::pair<BinaryImage, CellTruth> render_cell_mask(const WheelState& state,
                                                   const SynthSpec& spec) {
    BinaryImage mask = make_binary(spec.cell_w, spec.cell_h, false);
    std::vector<int> rows_a(std::size_t(spec.cell_h), 0);
    std::vector<int> rows_b(std::size_t(spec.cell_h), 0);
    CellTruth t;

    if (!state.rolling) {
        draw_glyph(mask, state.digit, spec, 0, 0, spec.cell_h, rows_a);
        t.half = false;
        t.a = t.b = state.digit;
        return {std::move(mask), std::move(t)};
    }

    // The drum carries glyph a, a blank separator band, then glyph a+1.
    // Advancing by `offset` shifts everything up by offset*cell_h; the
    // aperture reveal hides the outermost kApertureClearance rows.
    const int a = state.digit;
    const int b = (a + 1) % 10;
    const int shift = int(std::lround(state.offset * spec.cell_h));
    const int clip_top = kApertureClearance;
    const int clip_bot = spec.cell_h - kApertureClearance;
    draw_glyph(mask, a, spec, -shift, clip_top, clip_bot, rows_a);
    draw_glyph(mask, b, spec, spec.cell_h - shift + spec.separator_rows, clip_top, clip_bot,
               rows_b);

    const int a_rows = ink_row_count(rows_a);
    const int b_rows = ink_row_count(rows_b);
    const int thr = label_min_rows(spec.cell_h);
    if (a_rows >= thr && b_rows >= thr) {
        t.half = true;
        t.a = a;
        t.b = b;
        t.offset = state.offset;
        int last_a = -1, first_b = -1;
        for (int y = 0; y < spec.cell_h; ++y) {
            if (rows_a[y] > 0) last_a = y;
            if (rows_b[y] > 0 && first_b < 0) first_b = y;
        }
        t.gap_top = last_a + 1;
        t.gap_bottom = first_b - 1;
    } else {
        // One fragment never cleared the aperture: the cell reads as a full
        // digit, and that is what the truth records.
        t.half = false;
        const int shown = (a_rows >= b_rows) ? a : b;
        t.a = t.b = shown;
    }
    return {std::move(mask), std::move(t)};
}

GrayImage mask_to_gray(const BinaryImage& mask) {
    GrayImage g = make_gray(mask.width, mask.height, kPaperIntensity);
    for (std::size_t i = 0; i < mask.bits.size(); ++i)
        if (mask.bits[i]) g.pixels[i] = kInkIntensity;
    return g;
}

}  // namespace

const std::vector<GlyphRect>& glyph_rects(int digit) {
    if (digit < 0 || digit > 9) throw std::invalid_argument("glyph_rects: digit out of range");
    return kGlyphs[digit];
}

std::pair<GrayImage, CellTruth> render_cell(const WheelState& state, const SynthSpec& spec) {
    validate_spec(spec);
    auto [mask, truth] = render_cell_mask(state, spec);
    GrayImage img = mask_to_gray(mask);
    truth.box = Rect{0, 0, spec.cell_w, spec.cell_h};
    truth.mask = std::move(mask);
    std::mt19937 rng = make_stream(spec.seed, 0);
    apply_noise(img, spec.noise_sigma, spec.salt_pepper, rng);
    return {std::move(img), std::move(truth)};
}

MeterGeometry meter_geometry(const SynthSpec& spec) {
    MeterGeometry g;
    g.window = Rect{spec.border_px, spec.border_px, int(spec.reading.size()) * spec.cell_w,
                    spec.cell_h};
    g.cell_count = int(spec.reading.size());
    g.cell_gap = 0;
    return g;
}

std::pair<GrayImage, GroundTruth> render_meter(const SynthSpec& spec) {
    validate_spec(spec);
    if (spec.reading.empty()) throw std::invalid_argument("render_meter: no wheels");
    const int n = int(spec.reading.size());
    const int W = 2 * spec.border_px + n * spec.cell_w;
    const int H = 2 * spec.border_px + spec.cell_h;

    GrayImage img = make_gray(W, H, kPaperIntensity);
    // Dark frame around the window, as on the physical dial.
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x)
            if (x < spec.border_px || y < spec.border_px || x >= W - spec.border_px ||
                y >= H - spec.border_px)
                img.at(x, y) = kFrameIntensity;

    GroundTruth gt;
    gt.cells.reserve(std::size_t(n));
    for (int i = 0; i < n; ++i) {
        auto [mask, truth] = render_cell_mask(spec.reading[std::size_t(i)], spec);
        const int ox = spec.border_px + i * spec.cell_w;
        const int oy = spec.border_px;
        for (int y = 0; y < spec.cell_h; ++y)
            for (int x = 0; x < spec.cell_w; ++x)
                if (mask.at(x, y)) img.at(ox + x, oy + y) = kInkIntensity;
        truth.box = Rect{ox, oy, spec.cell_w, spec.cell_h};
        truth.mask = std::move(mask);
        gt.cells.push_back(std::move(truth));
    }

    std::mt19937 rng = make_stream(spec.seed, 0);
    apply_noise(img, spec.noise_sigma, spec.salt_pepper, rng);
    return {std::move(img), std::move(gt)};
}

void save_ground_truth(const GroundTruth& gt, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("gt: cannot write '" + path + "'");
    out << "GT 1\n";
    out << "cells " << gt.cells.size() << "\n";
    char buf[32];
    for (std::size_t i = 0; i < gt.cells.size(); ++i) {
        const CellTruth& c = gt.cells[i];
        if (c.half) {
            std::snprintf(buf, sizeof buf, "%.3f", c.offset);
            out << "cell " << i << " half " << c.a << " " << c.b << " offset " << buf << "\n";
        } else {
            out << "cell " << i << " full " << c.a << "\n";
        }
    }
    for (std::size_t i = 0; i < gt.cells.size(); ++i) {
        const Rect& b = gt.cells[i].box;
        out << "box " << i << " " << b.x << " " << b.y << " " << b.w << " " << b.h << "\n";
    }
    if (!out) throw std::runtime_error("gt: write failed for '" + path + "'");
}

GroundTruth load_ground_truth(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("gt: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != "GT 1")
        throw std::runtime_error("gt: bad magic in '" + path + "'");
    std::size_t k = 0;
    {
        if (!std::getline(in, line)) throw std::runtime_error("gt: missing cell count");
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key >> k) || key != "cells" || k < 1)
            throw std::runtime_error("gt: bad cells line in '" + path + "'");
    }
    GroundTruth gt;
    gt.cells.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (!std::getline(in, line)) throw std::runtime_error("gt: missing cell line");
        std::istringstream ls(line);
        std::string key, kind;
        std::size_t idx = 0;
        if (!(ls >> key >> idx >> kind) || key != "cell" || idx != i)
            throw std::runtime_error("gt: bad cell line in '" + path + "'");
        CellTruth& c = gt.cells[i];
        if (kind == "full") {
            if (!(ls >> c.a) || c.a < 0 || c.a > 9)
                throw std::runtime_error("gt: bad full digit in '" + path + "'");
            c.b = c.a;
            c.half = false;
        } else if (kind == "half") {
            std::string okey;
            if (!(ls >> c.a >> c.b >> okey >> c.offset) || okey != "offset" || c.a < 0 ||
                c.a > 9 || c.b != (c.a + 1) % 10 || c.offset <= 0.0 || c.offset >= 1.0)
                throw std::runtime_error("gt: bad half line in '" + path + "'");
            c.half = true;
        } else {
            throw std::runtime_error("gt: unknown cell kind '" + kind + "' in '" + path + "'");
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (!std::getline(in, line)) throw std::runtime_error("gt: missing box line");
        std::istringstream ls(line);
        std::string key;
        std::size_t idx = 0;
        Rect b;
        if (!(ls >> key >> idx >> b.x >> b.y >> b.w >> b.h) || key != "box" || idx != i ||
            b.w < 1 || b.h < 1)
            throw std::runtime_error("gt: bad box line in '" + path + "'");
        gt.cells[i].box = b;
    }
    return gt;
}

void generate_corpus(const CorpusParams& p, const std::string& out_dir) {
    if (p.count < 1) throw std::invalid_argument("generate_corpus: count must be >= 1");
    if (p.cells < 1) throw std::invalid_argument("generate_corpus: cells must be >= 1");
    if (p.rolling_frac < 0.0 || p.rolling_frac > 1.0)
        throw std::invalid_argument("generate_corpus: rolling_frac must be in [0,1]");
    if (!(p.offset_min > 0.0 && p.offset_max < 1.0 && p.offset_min <= p.offset_max))
        throw std::invalid_argument("generate_corpus: offsets must satisfy 0 < min <= max < 1");

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("generate_corpus: cannot create '" + out_dir + "'");

    std::string first_error;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (int i = 0; i < p.count; ++i) {
        try {
            std::mt19937 rng = make_stream(p.seed, std::uint64_t(i) + 1);
            SynthSpec spec;
            spec.cell_w = p.cell_w;
            spec.cell_h = p.cell_h;
            spec.separator_rows = p.separator_rows;
            spec.border_px = p.border_px;
            spec.noise_sigma = p.noise_sigma;
            spec.salt_pepper = p.salt_pepper;
            spec.seed = std::uint32_t(rng());
            for (int c = 0; c < p.cells; ++c) {
                const bool roll = uniform01(rng) < p.rolling_frac;
                const int digit = int(uniform01(rng) * 10.0) % 10;
                if (roll) {
                    const double off =
                        p.offset_min + uniform01(rng) * (p.offset_max - p.offset_min);
                    spec.reading.push_back(rolling_wheel(digit, off));
                } else {
                    spec.reading.push_back(full_wheel(digit));
                }
            }
            auto [img, gt] = render_meter(spec);
            char name[32];
            std::snprintf(name, sizeof name, "meter_%04d.pgm", i);
            const std::string img_path = (fs::path(out_dir) / name).string();
            save_pgm(img, img_path);
            save_ground_truth(gt, img_path + ".gt");
        } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (first_error.empty()) first_error = e.what();
        }
    }
    if (!first_error.empty()) throw std::runtime_error(first_error);

    Config cfg;
    cfg.geometry.window = Rect{p.border_px, p.border_px, p.cells * p.cell_w, p.cell_h};
    cfg.geometry.cell_count = p.cells;
    cfg.geometry.cell_gap = 0;
    cfg.params.min_frag = kHalfLabelMinFrag;
    save_config(cfg, (std::filesystem::path(out_dir) / "meter.cfg").string());
}

}  // namespace meterocr
