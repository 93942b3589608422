#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "meterocr/raster.hpp"

namespace meterocr {

inline constexpr int kDefaultProfileLen = 32;

/// Fixed-length column-projection feature. values[k] is the normalized ink
/// mass of resampled column k, always in [0,1].
struct ProjectionProfile {
    std::vector<double> values;

    int length() const { return int(values.size()); }
};

/// Per-digit reference profiles plus how many samples went into each mean.
struct TemplateSet {
    int profile_len = kDefaultProfileLen;
    std::array<ProjectionProfile, 10> templates;
    std::array<int, 10> sample_counts{};
};

/// All ten digits ranked by match error, ascending. Ties go to the smaller
/// digit.
struct MatchRanking {
    std::array<std::pair<int, double>, 10> scores;

    int best() const { return scores[0].first; }
    double best_error() const { return scores[0].second; }
    double error_of(int digit) const;
};

/// Per-column foreground fraction inside `box`: entry j is the foreground
/// count of column box.x+j divided by box.h. Throws if the box holds no
/// foreground at all.
std::vector<double> column_profile(const BinaryImage& bin, const Rect& box);

/// Linear interpolation of `raw` onto `len` equally spaced points spanning
/// [0, raw.size()-1]; output clamped to [0,1].
ProjectionProfile resample_profile(const std::vector<double>& raw, int len);

/// Pointwise mean of the samples per digit. Every digit 0..9 must be present
/// with at least one sample and a consistent profile length.
TemplateSet train_templates(const std::map<int, std::vector<ProjectionProfile>>& samples);

/// Mean absolute difference against each template, sorted ascending.
MatchRanking match_digit(const ProjectionProfile& p, const TemplateSet& t);

// Template file ("PMTPL 1"), line oriented, bit exact:
//   PMTPL 1
//   profile_len <P>
//   digit <d> samples <n>
//   <P space-separated values, 6 fractional digits>   (for d = 0..9 in order)
void save_templates(const TemplateSet& t, const std::string& path);
TemplateSet load_templates(const std::string& path);

}  // namespace meterocr
