#pragma once

#include <cstdint>
#include <vector>

#include "meterocr/projmatch.hpp"
#include "meterocr/raster.hpp"

namespace meterocr {

enum class Connectivity { Four = 4, Eight = 8 };

/// Connected-component labeling result. Label 0 is background; component ids
/// run 1..component_count in first-encounter (row-major scan) order. areas and
/// boxes are indexed by id (entry 0 unused).
struct LabelMap {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> labels;
    std::int32_t component_count = 0;
    std::vector<std::uint32_t> areas;
    std::vector<Rect> boxes;
};

LabelMap label_components(const BinaryImage& bin, Connectivity conn);

/// Enclosed background regions of a digit cell. Centroids are pixel-center
/// coordinates normalized to [0,1] by cell width/height, listed in
/// first-encounter order.
struct HoleFeatures {
    int hole_count = 0;
    std::vector<std::pair<double, double>> centroids;  // (cx, cy)
};

/// Holes are 4-connected background components with no path to the raster
/// border through background.
HoleFeatures hole_features(const BinaryImage& bin);

/// Second-pass rule for the {5,6,8,9} confusion set. Requires the ranking's
/// top digit to be in that set.
///   2 holes -> 8; 0 holes -> 5;
///   1 hole  -> 6 if its centroid sits below 0.5+margin, 9 if above 0.5-margin,
///              otherwise the better ranked of {6,9};
///   3+       -> keep the ranking's top digit.
int disambiguate_5689(const MatchRanking& ranking, const HoleFeatures& f,
                      double margin = 0.05);

}  // namespace meterocr
