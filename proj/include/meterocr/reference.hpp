#pragma once

// Plain serial reference implementations of the pixel kernels, kept for
// testing and benchmarking. Each one is written independently of the
// production path (flood fill instead of union-find, exhaustive rescan
// instead of streaming moments) so the pair can cross-check each other.

#include "meterocr/preproc.hpp"
#include "meterocr/raster.hpp"
#include "meterocr/topo.hpp"

namespace meterocr::ref {

Histogram256 histogram(const GrayImage& img);

/// Exhaustive scan over all 256 thresholds, recomputing both class moments
/// from scratch for each candidate.
int otsu_threshold(const Histogram256& h);

BinaryImage binarize(const GrayImage& img, int threshold);

/// BFS flood fill labeling, ids in first-encounter scan order.
LabelMap label_components(const BinaryImage& bin, Connectivity conn);

/// Flood fill erasure from every edge pixel.
BinaryImage clear_border(const BinaryImage& bin);

BinaryImage remove_small(const BinaryImage& bin, int min_area);

std::vector<double> column_profile(const BinaryImage& bin, const Rect& box);

}  // namespace meterocr::ref
