#pragma once

#include <string>

#include "meterocr/preproc.hpp"
#include "meterocr/reading.hpp"

namespace meterocr {

/// Flat key=value configuration for the CLI. Unknown keys are rejected.
/// Keys: window (x y w h), cells, cell_gap, polarity (normal|invert),
/// min_area_frac, min_gap, min_frag, topo_margin, templates (optional path).
struct Config {
    MeterGeometry geometry;
    RecognizerParams params;
    std::string template_path;  // empty when not set
};

Config load_config(const std::string& path);
void save_config(const Config& cfg, const std::string& path);

}  // namespace meterocr
