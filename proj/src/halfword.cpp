#include "meterocr/halfword.hpp"

#include <algorithm>
#include <cmath>

namespace meterocr {

namespace {

std::vector<int> row_occupancy(const BinaryImage& bin) {
    std::vector<int> occ(std::size_t(bin.height), 0);
    for (int y = 0; y < bin.height; ++y) {
        const std::uint8_t* row = &bin.bits[std::size_t(y) * bin.width];
        int c = 0;
        for (int x = 0; x < bin.width; ++x) c += row[x] ? 1 : 0;
        occ[y] = c;
    }
    return occ;
}

}  // namespace

std::vector<InkBand> ink_bands(const BinaryImage& bin) {
    const auto occ = row_occupancy(bin);
    std::vector<InkBand> bands;
    int y = 0;
    while (y < bin.height) {
        if (occ[y] == 0) {
            ++y;
            continue;
        }
        InkBand b;
        b.top = y;
        b.area = 0;
        while (y < bin.height && occ[y] != 0) {
            b.area += occ[y];
            ++y;
        }
        b.bottom = y - 1;
        bands.push_back(b);
    }
    return bands;
}

SplitDecision detect_split(const BinaryImage& bin, int min_gap, double min_frag) {
    if (min_gap < 1) throw std::invalid_argument("detect_split: min_gap must be >= 1");
    const auto occ = row_occupancy(bin);
    int top = -1, bot = -1;
    for (int y = 0; y < bin.height; ++y)
        if (occ[y] != 0) {
            if (top < 0) top = y;
            bot = y;
        }
    if (top < 0) throw std::invalid_argument("detect_split: empty cell");

    const int min_rows = std::max(1, int(std::ceil(min_frag * bin.height - 1e-9)));

    // Widest qualifying blank run strictly inside [top, bot]; ties topmost.
    int best_g0 = -1, best_g1 = -1, best_len = 0;
    int y = top + 1;
    while (y < bot) {
        if (occ[y] != 0) {
            ++y;
            continue;
        }
        const int g0 = y;
        while (y < bot && occ[y] == 0) ++y;
        const int g1 = y - 1;
        const int len = g1 - g0 + 1;
        const int above_h = g0 - top;
        const int below_h = bot - g1;
        if (len >= min_gap && above_h >= min_rows && below_h >= min_rows && len > best_len) {
            best_len = len;
            best_g0 = g0;
            best_g1 = g1;
        }
    }

    SplitDecision d;
    if (best_g0 < 0) return d;
    d.kind = SplitKind::HalfWord;
    d.gap_top = best_g0;
    d.gap_bottom = best_g1;
    d.above_box = Rect{0, top, bin.width, best_g0 - top};
    d.below_box = Rect{0, best_g1 + 1, bin.width, bot - best_g1};
    return d;
}

MatchRanking match_half(const BinaryImage& bin, const Rect& box, const TemplateSet& t) {
    const auto raw = column_profile(bin, box);  // throws on empty fragment
    return match_digit(resample_profile(raw, t.profile_len), t);
}

HalfMatch resolve_pair(const MatchRanking& above, const MatchRanking& below) {
    HalfMatch hm;
    hm.above = above;
    hm.below = below;
    hm.raw_above = above.best();
    hm.raw_below = below.best();
    int best_a = 0;
    double best_sum = above.error_of(0) + below.error_of(1);
    for (int a = 1; a < 10; ++a) {
        const double sum = above.error_of(a) + below.error_of((a + 1) % 10);
        if (sum < best_sum) {
            best_sum = sum;
            best_a = a;
        }
    }
    hm.above_digit = best_a;
    hm.below_digit = (best_a + 1) % 10;
    hm.pair_error = best_sum;
    return hm;
}

}  // namespace meterocr
