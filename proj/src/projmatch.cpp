#include "meterocr/projmatch.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace meterocr {

double MatchRanking::error_of(int digit) const {
    for (const auto& [d, e] : scores)
        if (d == digit) return e;
    throw std::invalid_argument("error_of: digit out of range");
}

std::vector<double> column_profile(const BinaryImage& bin, const Rect& box) {
    if (!rect_within(box, bin.width, bin.height))
        throw std::invalid_argument("column_profile: box out of bounds");
    std::vector<int> counts(std::size_t(box.w), 0);
    for (int y = 0; y < box.h; ++y) {
        const std::uint8_t* row = &bin.bits[std::size_t(box.y + y) * bin.width + box.x];
        for (int j = 0; j < box.w; ++j) counts[j] += row[j] ? 1 : 0;
    }
    long long total = 0;
    for (int c : counts) total += c;
    if (total == 0) throw std::invalid_argument("column_profile: box has no foreground");
    std::vector<double> values(std::size_t(box.w));
    for (int j = 0; j < box.w; ++j) values[j] = double(counts[j]) / double(box.h);
    return values;
}

ProjectionProfile resample_profile(const std::vector<double>& raw, int len) {
    if (raw.empty()) throw std::invalid_argument("resample_profile: empty input");
    if (len < 2) throw std::invalid_argument("resample_profile: length must be >= 2");
    ProjectionProfile p;
    p.values.resize(std::size_t(len));
    const int n = int(raw.size());
    for (int k = 0; k < len; ++k) {
        double v;
        if (n == 1) {
            v = raw[0];
        } else {
            const double pos = double(k) * double(n - 1) / double(len - 1);
            int i0 = int(pos);
            if (i0 >= n - 1) i0 = n - 2;
            const double f = pos - double(i0);
            v = raw[std::size_t(i0)] * (1.0 - f) + raw[std::size_t(i0) + 1] * f;
        }
        p.values[std::size_t(k)] = std::clamp(v, 0.0, 1.0);
    }
    return p;
}

TemplateSet train_templates(const std::map<int, std::vector<ProjectionProfile>>& samples) {
    int profile_len = -1;
    for (int d = 0; d < 10; ++d) {
        auto it = samples.find(d);
        if (it == samples.end() || it->second.empty())
            throw std::invalid_argument("train_templates: no samples for digit " +
                                        std::to_string(d));
        for (const auto& s : it->second) {
            if (profile_len < 0) profile_len = s.length();
            if (s.length() != profile_len)
                throw std::invalid_argument("train_templates: profile length mismatch");
        }
    }
    TemplateSet t;
    t.profile_len = profile_len;
    for (int d = 0; d < 10; ++d) {
        const auto& list = samples.at(d);
        ProjectionProfile mean;
        mean.values.assign(std::size_t(profile_len), 0.0);
        for (const auto& s : list)
            for (int k = 0; k < profile_len; ++k) mean.values[k] += s.values[k];
        for (int k = 0; k < profile_len; ++k) mean.values[k] /= double(list.size());
        t.templates[d] = std::move(mean);
        t.sample_counts[d] = int(list.size());
    }
    return t;
}

MatchRanking match_digit(const ProjectionProfile& p, const TemplateSet& t) {
    if (p.length() != t.profile_len)
        throw std::invalid_argument("match_digit: profile length mismatch");
    MatchRanking r;
    for (int d = 0; d < 10; ++d) {
        double sum = 0.0;
        const auto& tpl = t.templates[d].values;
        for (int k = 0; k < t.profile_len; ++k) sum += std::fabs(p.values[k] - tpl[k]);
        r.scores[d] = {d, sum / double(t.profile_len)};
    }
    std::sort(r.scores.begin(), r.scores.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
    return r;
}

void save_templates(const TemplateSet& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("templates: cannot write '" + path + "'");
    out << "PMTPL 1\n";
    out << "profile_len " << t.profile_len << "\n";
    char buf[32];
    for (int d = 0; d < 10; ++d) {
        out << "digit " << d << " samples " << t.sample_counts[d] << "\n";
        const auto& v = t.templates[d].values;
        for (int k = 0; k < t.profile_len; ++k) {
            std::snprintf(buf, sizeof buf, "%.6f", v[k]);
            out << (k ? " " : "") << buf;
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("templates: write failed for '" + path + "'");
}

namespace {

std::string next_line(std::istream& in, const char* what) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(std::string("templates: missing ") + what);
    return line;
}

}  // namespace

TemplateSet load_templates(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("templates: cannot open '" + path + "'");

    if (next_line(in, "magic") != "PMTPL 1")
        throw std::runtime_error("templates: bad magic in '" + path + "'");

    TemplateSet t;
    {
        std::istringstream ls(next_line(in, "profile_len"));
        std::string key;
        if (!(ls >> key >> t.profile_len) || key != "profile_len" || t.profile_len < 2)
            throw std::runtime_error("templates: bad profile_len line in '" + path + "'");
    }
    for (int d = 0; d < 10; ++d) {
        std::istringstream hs(next_line(in, "digit header"));
        std::string kd, ks;
        int digit = -1, count = 0;
        if (!(hs >> kd >> digit >> ks >> count) || kd != "digit" || ks != "samples" ||
            digit != d || count < 1)
            throw std::runtime_error("templates: bad digit header for digit " +
                                     std::to_string(d) + " in '" + path + "'");
        std::istringstream vs(next_line(in, "profile values"));
        ProjectionProfile p;
        p.values.resize(std::size_t(t.profile_len));
        for (int k = 0; k < t.profile_len; ++k) {
            if (!(vs >> p.values[k]) || p.values[k] < 0.0 || p.values[k] > 1.0)
                throw std::runtime_error("templates: bad value for digit " +
                                         std::to_string(d) + " in '" + path + "'");
        }
        double extra;
        if (vs >> extra)
            throw std::runtime_error("templates: too many values for digit " +
                                     std::to_string(d) + " in '" + path + "'");
        t.templates[d] = std::move(p);
        t.sample_counts[d] = count;
    }
    return t;
}

}  // namespace meterocr
