#include "meterocr/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace meterocr {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void bad(const std::string& path, int line_no, const std::string& why) {
    throw std::runtime_error("config: " + path + ":" + std::to_string(line_no) + ": " + why);
}

}  // namespace

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    Config cfg;
    bool have_window = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        const std::size_t eq = text.find('=');
        if (eq == std::string::npos) bad(path, line_no, "expected key = value");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        std::istringstream vs(value);

        if (key == "window") {
            Rect& w = cfg.geometry.window;
            std::string extra;
            if (!(vs >> w.x >> w.y >> w.w >> w.h) || (vs >> extra) || w.w < 1 || w.h < 1 ||
                w.x < 0 || w.y < 0)
                bad(path, line_no, "window wants four nonnegative ints: x y w h");
            have_window = true;
        } else if (key == "cells") {
            if (!(vs >> cfg.geometry.cell_count) || cfg.geometry.cell_count < 1)
                bad(path, line_no, "cells must be a positive int");
        } else if (key == "cell_gap") {
            if (!(vs >> cfg.geometry.cell_gap) || cfg.geometry.cell_gap < 0)
                bad(path, line_no, "cell_gap must be a nonnegative int");
        } else if (key == "polarity") {
            if (value == "normal")
                cfg.params.invert = false;
            else if (value == "invert")
                cfg.params.invert = true;
            else
                bad(path, line_no, "polarity must be 'normal' or 'invert'");
        } else if (key == "min_area_frac") {
            if (!(vs >> cfg.params.min_area_frac) || cfg.params.min_area_frac < 0.0 ||
                cfg.params.min_area_frac > 0.5)
                bad(path, line_no, "min_area_frac must lie in [0, 0.5]");
        } else if (key == "min_gap") {
            if (!(vs >> cfg.params.min_gap) || cfg.params.min_gap < 1)
                bad(path, line_no, "min_gap must be a positive int");
        } else if (key == "min_frag") {
            if (!(vs >> cfg.params.min_frag) || cfg.params.min_frag < 0.0 ||
                cfg.params.min_frag > 0.5)
                bad(path, line_no, "min_frag must lie in [0, 0.5]");
        } else if (key == "topo_margin") {
            if (!(vs >> cfg.params.topo_margin) || cfg.params.topo_margin < 0.0 ||
                cfg.params.topo_margin > 0.5)
                bad(path, line_no, "topo_margin must lie in [0, 0.5]");
        } else if (key == "templates") {
            if (value.empty()) bad(path, line_no, "templates wants a path");
            cfg.template_path = value;
        } else {
            bad(path, line_no, "unknown key '" + key + "'");
        }
    }
    if (!have_window) throw std::runtime_error("config: " + path + ": missing 'window'");
    return cfg;
}

void save_config(const Config& cfg, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("config: cannot write '" + path + "'");
    char buf[64];
    out << "# meterocr configuration\n";
    out << "window = " << cfg.geometry.window.x << " " << cfg.geometry.window.y << " "
        << cfg.geometry.window.w << " " << cfg.geometry.window.h << "\n";
    out << "cells = " << cfg.geometry.cell_count << "\n";
    out << "cell_gap = " << cfg.geometry.cell_gap << "\n";
    out << "polarity = " << (cfg.params.invert ? "invert" : "normal") << "\n";
    std::snprintf(buf, sizeof buf, "min_area_frac = %.4f", cfg.params.min_area_frac);
    out << buf << "\n";
    out << "min_gap = " << cfg.params.min_gap << "\n";
    std::snprintf(buf, sizeof buf, "min_frag = %.4f", cfg.params.min_frag);
    out << buf << "\n";
    std::snprintf(buf, sizeof buf, "topo_margin = %.4f", cfg.params.topo_margin);
    out << buf << "\n";
    if (!cfg.template_path.empty()) out << "templates = " << cfg.template_path << "\n";
    if (!out) throw std::runtime_error("config: write failed for '" + path + "'");
}

}  // namespace meterocr
