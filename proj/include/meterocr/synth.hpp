#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "meterocr/preproc.hpp"
#include "meterocr/raster.hpp"

namespace meterocr {

/// One wheel of the odometer: either settled on a digit or mid-roll between
/// digit and digit+1 with the drum advanced by `offset` of a full step.
struct WheelState {
    bool rolling = false;
    int digit = 0;
    double offset = 0.0;  // rolling only; open interval (0,1)
};

inline WheelState full_wheel(int d) { return WheelState{false, d, 0.0}; }
inline WheelState rolling_wheel(int d, double offset) { return WheelState{true, d, offset}; }

struct SynthSpec {
    int cell_w = 24;
    int cell_h = 40;
    std::vector<WheelState> reading;
    int separator_rows = 3;   // blank drum band between adjacent glyphs
    double noise_sigma = 0.0; // Gaussian, intensity units
    double salt_pepper = 0.0; // total flip rate, split evenly 0/255
    int border_px = 6;        // dark frame around the meter window
    std::uint32_t seed = 0;
};

/// Labeled truth for one rendered wheel. For a mid-roll render whose second
/// fragment never makes it past the aperture, the label collapses to the full
/// digit the cell actually shows.
struct CellTruth {
    bool half = false;
    int a = 0;                      // full digit, or upper digit of the pair
    int b = 0;                      // lower digit of the pair (half only)
    double offset = 0.0;            // half only
    Rect box;                       // cell box in full-image coordinates
    int gap_top = -1, gap_bottom = -1;  // blank band between fragments (cell rows)
    BinaryImage mask;               // rendered ink, before noise
};

struct GroundTruth {
    std::vector<CellTruth> cells;
};

// Renderer constants. Ink rows shorter than ceil(kHalfLabelMinFrag * cell_h)
// are treated as not readable as a fragment; recognizer configs written by
// the corpus generator use the same fraction for detect_split.
inline constexpr double kHalfLabelMinFrag = 0.15;
inline constexpr int kApertureClearance = 2;  // rows masked at cell top/bottom
inline constexpr int kInkIntensity = 30;
inline constexpr int kPaperIntensity = 220;
inline constexpr int kFrameIntensity = 15;
inline constexpr int kMinCellW = 12;
inline constexpr int kMinCellH = 16;

/// Axis-aligned stroke on the unit glyph square (x right, y down).
struct GlyphRect {
    double x0, y0, x1, y1;
};

/// The built-in glyph table (see docs/glyphs.md). Holes: one in 0, 4, 6, 9;
/// two in 8; none elsewhere.
const std::vector<GlyphRect>& glyph_rects(int digit);

std::pair<GrayImage, CellTruth> render_cell(const WheelState& state, const SynthSpec& spec);

std::pair<GrayImage, GroundTruth> render_meter(const SynthSpec& spec);

/// MeterGeometry matching render_meter's layout for the given spec.
MeterGeometry meter_geometry(const SynthSpec& spec);

struct CorpusParams {
    int count = 100;
    int cells = 5;
    int cell_w = 24;
    int cell_h = 40;
    int separator_rows = 3;
    int border_px = 6;
    double rolling_frac = 0.3;
    double offset_min = 0.1;
    double offset_max = 0.9;
    double noise_sigma = 0.0;
    double salt_pepper = 0.0;
    std::uint32_t seed = 0;
};

/// Writes count meter images (meter_NNNN.pgm), one ground-truth sidecar per
/// image (meter_NNNN.pgm.gt) and a ready-to-use meter.cfg into out_dir.
/// Deterministic: one RNG stream per image derived from (seed, index).
void generate_corpus(const CorpusParams& p, const std::string& out_dir);

// Sidecar format ("GT 1"), line oriented:
//   GT 1
//   cells <k>
//   cell <i> full <d>            or   cell <i> half <a> <b> offset <o>
//   box <i> <x> <y> <w> <h>
void save_ground_truth(const GroundTruth& gt, const std::string& path);
GroundTruth load_ground_truth(const std::string& path);  // boxes and states only

}  // namespace meterocr
