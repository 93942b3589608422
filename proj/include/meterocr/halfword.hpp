#pragma once

#include <vector>

#include "meterocr/projmatch.hpp"
#include "meterocr/raster.hpp"

namespace meterocr {

/// Maximal run of rows with nonzero foreground occupancy. Rows inclusive.
struct InkBand {
    int top = 0;
    int bottom = 0;
    long long area = 0;
};

std::vector<InkBand> ink_bands(const BinaryImage& bin);

enum class SplitKind { FullWord, HalfWord };

/// HalfWord: gap_top..gap_bottom is the blank band between the two fragments;
/// above_box/below_box span the full cell width over each fragment's ink rows.
struct SplitDecision {
    SplitKind kind = SplitKind::FullWord;
    int gap_top = -1;
    int gap_bottom = -1;
    Rect above_box{};
    Rect below_box{};
};

/// Declares a half-word iff a run of >= min_gap blank rows lies strictly
/// inside the ink's vertical extent and both resulting fragments are at least
/// min_frag * cell height tall. Widest qualifying run wins, ties topmost.
SplitDecision detect_split(const BinaryImage& bin, int min_gap = 2, double min_frag = 0.15);

/// Projects one fragment (normalized by the fragment's own height) and ranks
/// it against the full-digit templates.
MatchRanking match_half(const BinaryImage& bin, const Rect& box, const TemplateSet& t);

/// Joint resolution of an (above, below) fragment pair under the wheel
/// constraint below = above + 1 (mod 10).
struct HalfMatch {
    MatchRanking above;
    MatchRanking below;
    int above_digit = 0;   // resolved a
    int below_digit = 0;   // always (a+1) mod 10
    double pair_error = 0; // above.error(a) + below.error(b)
    int raw_above = 0;     // unconstrained argmins, for diagnostics
    int raw_below = 0;
};

HalfMatch resolve_pair(const MatchRanking& above, const MatchRanking& below);

}  // namespace meterocr
