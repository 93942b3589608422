#include "meterocr/reading.hpp"

#include <algorithm>
#include <cmath>

#include "meterocr/topo.hpp"

namespace meterocr {

namespace {

int min_area_pixels(double frac, int cell_w, int cell_h) {
    return std::max(1, int(std::lround(frac * double(cell_w) * double(cell_h))));
}

bool in_confusion_set(int d) { return d == 5 || d == 6 || d == 8 || d == 9; }

}  // namespace

bool MeterReading::has_unreadable() const {
    for (const auto& c : cells)
        if (c.kind == CellKind::Unreadable) return true;
    return false;
}

BinaryImage clean_cell(const GrayImage& cell, const RecognizerParams& p) {
    const GrayImage* src = &cell;
    GrayImage inverted;
    if (p.invert) {
        inverted = invert(cell);
        src = &inverted;
    }
    const int t = otsu_threshold(histogram(*src));
    BinaryImage b = binarize(*src, t);
    b = clear_border(b);
    const int min_area = min_area_pixels(p.min_area_frac, cell.width, cell.height);
    b = remove_small(b, min_area);
    b = fill_holes(b, min_area);
    return b;
}

ProjectionProfile cell_profile(const BinaryImage& cleaned, int profile_len) {
    const auto bands = ink_bands(cleaned);
    if (bands.empty()) throw std::invalid_argument("cell_profile: empty cell");
    const InkBand* main = &bands[0];
    for (const auto& b : bands)
        if (b.area > main->area) main = &b;
    const Rect box{0, main->top, cleaned.width, main->bottom - main->top + 1};
    return resample_profile(column_profile(cleaned, box), profile_len);
}

CellResult classify_cell(const BinaryImage& cell, const TemplateSet& t,
                         const RecognizerParams& p) {
    CellResult r;
    const auto bands = ink_bands(cell);
    if (bands.empty()) {
        r.kind = CellKind::Unreadable;
        return r;
    }

    const SplitDecision split = detect_split(cell, p.min_gap, p.min_frag);
    if (split.kind == SplitKind::HalfWord) {
        const MatchRanking above = match_half(cell, split.above_box, t);
        const MatchRanking below = match_half(cell, split.below_box, t);
        const HalfMatch hm = resolve_pair(above, below);
        r.kind = CellKind::Half;
        r.digit = hm.above_digit;
        r.above_digit = hm.above_digit;
        r.below_digit = hm.below_digit;
        r.pair_error = hm.pair_error;
        return r;
    }

    const InkBand* main = &bands[0];
    for (const auto& b : bands)
        if (b.area > main->area) main = &b;
    const int band_h = main->bottom - main->top + 1;
    const Rect box{0, main->top, cell.width, band_h};
    const MatchRanking ranking =
        match_digit(resample_profile(column_profile(cell, box), t.profile_len), t);

    r.kind = CellKind::Full;
    r.digit = ranking.best();
    r.error = ranking.best_error();
    if (in_confusion_set(r.digit) && band_h >= kTopoExtentFrac * cell.height) {
        r.digit = disambiguate_5689(ranking, hole_features(cell), p.topo_margin);
        r.used_topo = true;
    }
    return r;
}

MeterReading resolve_reading(const std::vector<CellResult>& cells) {
    if (cells.empty()) throw std::invalid_argument("resolve_reading: no cells");
    MeterReading reading;
    reading.cells = cells;
    reading.digits.resize(cells.size(), 0);

    for (std::size_t i = 0; i < cells.size(); ++i) {
        const CellResult& c = cells[i];
        switch (c.kind) {
            case CellKind::Full:
                reading.digits[i] = c.digit;
                break;
            case CellKind::Half:
                reading.digits[i] = c.above_digit;  // floor: never overstate
                break;
            case CellKind::Unreadable:
                reading.digits[i] = 0;
                reading.warnings.push_back("cell " + std::to_string(i) +
                                           " unreadable; defaulted to 0");
                break;
        }
    }

    // A wheel can only sit mid-roll while every less significant wheel passes
    // 9 -> 0; anything else means a recognition error somewhere.
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].kind != CellKind::Half) continue;
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
            if (reading.digits[j] != 9)
                reading.warnings.push_back(
                    "cell " + std::to_string(i) + " mid-roll but cell " + std::to_string(j) +
                    " reads " + std::to_string(reading.digits[j]) + " (expected 9)");
        }
    }

    reading.value = 0;
    for (int d : reading.digits) reading.value = reading.value * 10 + std::uint64_t(d);
    return reading;
}

MeterReading read_window(const GrayImage& window, const MeterGeometry& g,
                         const TemplateSet& t, const RecognizerParams& p) {
    const auto cells = split_cells(window, g);
    std::vector<CellResult> results(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        results[i] = classify_cell(clean_cell(cells[i], p), t, p);
        results[i].index = int(i);
    }
    return resolve_reading(results);
}

MeterReading read_frame(const GrayImage& frame, const MeterGeometry& g, const TemplateSet& t,
                        const RecognizerParams& p) {
    return read_window(crop(frame, g.window), g, t, p);
}

}  // namespace meterocr
