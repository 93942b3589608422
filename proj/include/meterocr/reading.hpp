#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "meterocr/halfword.hpp"
#include "meterocr/preproc.hpp"
#include "meterocr/projmatch.hpp"
#include "meterocr/raster.hpp"

namespace meterocr {

struct RecognizerParams {
    int min_gap = 2;
    double min_frag = 0.15;
    double topo_margin = 0.05;
    double min_area_frac = 0.01;  // of cell area
    bool invert = false;
};

// The hole-topology second pass only runs when the matched ink spans most of
// the cell: a glyph cut off by the aperture mid-roll has its loops opened and
// its hole count says nothing about the digit.
inline constexpr double kTopoExtentFrac = 0.85;

enum class CellKind { Full, Half, Unreadable };

struct CellResult {
    int index = 0;
    CellKind kind = CellKind::Unreadable;
    int digit = -1;        // resolved digit (Full: match; Half: floor digit a)
    int above_digit = -1;  // Half only
    int below_digit = -1;  // Half only, always (a+1) mod 10
    double error = 0.0;    // Full: best match error
    double pair_error = 0.0;  // Half only
    bool used_topo = false;
};

struct MeterReading {
    std::vector<int> digits;            // most significant first
    std::uint64_t value = 0;
    std::vector<std::string> warnings;  // consistency diagnostics
    std::vector<CellResult> cells;

    bool has_unreadable() const;
};

/// OTSU + binarize + border clearing + small-blob removal + speckle-hole
/// filling, i.e. one cell's share of the pre-treatment chain.
BinaryImage clean_cell(const GrayImage& cell, const RecognizerParams& p);

/// Column profile of the cell's dominant ink band (full cell width,
/// normalized by the band height), resampled to profile_len.
ProjectionProfile cell_profile(const BinaryImage& cleaned, int profile_len);

/// Full classification of one cleaned cell: split detection, then either
/// full-word matching (with the {5,6,8,9} second pass) or fragment-pair
/// resolution. An empty cell yields an Unreadable verdict, never a throw.
CellResult classify_cell(const BinaryImage& cell, const TemplateSet& t,
                         const RecognizerParams& p);

/// Applies the floor rule to half-words, assembles digits/value, and checks
/// cross-wheel consistency: a mid-roll wheel requires every less significant
/// wheel to read 9. Violations and unreadable cells become warnings.
MeterReading resolve_reading(const std::vector<CellResult>& cells);

MeterReading read_window(const GrayImage& window, const MeterGeometry& g,
                         const TemplateSet& t, const RecognizerParams& p);

/// Crops the configured window out of the camera frame, then read_window.
MeterReading read_frame(const GrayImage& frame, const MeterGeometry& g, const TemplateSet& t,
                        const RecognizerParams& p);

}  // namespace meterocr
