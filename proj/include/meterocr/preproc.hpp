#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "meterocr/raster.hpp"

namespace meterocr {

/// Fixed camera geometry: the effective meter window inside the frame and how
/// it divides into digit wheels.
struct MeterGeometry {
    Rect window;
    int cell_count = 5;
    int cell_gap = 0;
};

struct Histogram256 {
    std::array<std::uint32_t, 256> counts{};

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (auto c : counts) t += c;
        return t;
    }
};

/// Cuts the meter window (already cropped to the effective area) into
/// cell_count equal-width cells, left to right. Division remainder columns on
/// the right are discarded.
std::vector<GrayImage> split_cells(const GrayImage& window, const MeterGeometry& g);

Histogram256 histogram(const GrayImage& img);

/// Threshold maximizing the between-class variance w0*w1*(mu0-mu1)^2 with
/// class 0 = intensities <= t. Zero-mass classes score 0; ties resolve to the
/// smallest t.
int otsu_threshold(const Histogram256& h);

/// Foreground = ink = intensity <= t (dark digits on a pale drum).
BinaryImage binarize(const GrayImage& img, int threshold);

GrayImage invert(const GrayImage& img);

/// Erases every foreground component 8-connected to a raster edge pixel.
BinaryImage clear_border(const BinaryImage& bin);

/// Erases every 8-connected foreground component with area < min_area.
BinaryImage remove_small(const BinaryImage& bin, int min_area);

/// Fills enclosed background components with area < max_hole_area (speckle
/// holes punched into strokes by salt noise). Background touching the border
/// is never filled.
BinaryImage fill_holes(const BinaryImage& bin, int max_hole_area);

}  // namespace meterocr
