#include "meterocr/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "meterocr/synth.hpp"

namespace meterocr {

namespace fs = std::filesystem;

std::vector<std::pair<std::string, std::string>> list_corpus(const std::string& dir) {
    if (!fs::is_directory(dir)) throw std::runtime_error("corpus: '" + dir + "' is not a directory");
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".pgm") continue;
        fs::path gt = entry.path();
        gt += ".gt";
        if (fs::exists(gt)) out.emplace_back(entry.path().string(), gt.string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

TemplateSet train_from_corpus(const std::string& dir, const Config& cfg, int profile_len) {
    const auto files = list_corpus(dir);
    if (files.empty()) throw std::runtime_error("corpus: no labeled images in '" + dir + "'");
    std::map<int, std::vector<ProjectionProfile>> samples;
    for (const auto& [img_path, gt_path] : files) {
        const GrayImage frame = load_pgm(img_path);
        const GroundTruth gt = load_ground_truth(gt_path);
        const GrayImage window = crop(frame, cfg.geometry.window);
        const auto cells = split_cells(window, cfg.geometry);
        if (cells.size() != gt.cells.size())
            throw std::runtime_error("corpus: cell count mismatch for '" + img_path + "'");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (gt.cells[i].half) continue;
            const BinaryImage cleaned = clean_cell(cells[i], cfg.params);
            if (ink_bands(cleaned).empty()) continue;  // unreadable sample, skip
            samples[gt.cells[i].a].push_back(cell_profile(cleaned, profile_len));
        }
    }
    for (int d = 0; d < 10; ++d)
        if (samples.find(d) == samples.end() || samples[d].empty()) throw MissingDigitError(d);
    return train_templates(samples);
}

BatchReport run_batch(const std::string& dir, const Config& cfg, const TemplateSet& t) {
    const auto files = list_corpus(dir);
    if (files.empty()) throw std::runtime_error("corpus: no labeled images in '" + dir + "'");

    struct PerImage {
        BatchRow row;
        std::vector<int> truth_digits;
        std::vector<bool> truth_half;
        std::vector<int> got_digits;
        std::string error;
    };
    std::vector<PerImage> results(files.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
    for (long long i = 0; i < (long long)files.size(); ++i) {
        PerImage& r = results[i];
        r.row.image = fs::path(files[i].first).filename().string();
        try {
            const GrayImage frame = load_pgm(files[i].first);
            const GroundTruth gt = load_ground_truth(files[i].second);
            const MeterReading reading =
                read_frame(frame, cfg.geometry, t, cfg.params);
            if (reading.digits.size() != gt.cells.size())
                throw std::runtime_error("cell count mismatch");
            for (std::size_t c = 0; c < gt.cells.size(); ++c) {
                r.truth_digits.push_back(gt.cells[c].a);  // floor digit
                r.truth_half.push_back(gt.cells[c].half);
                r.got_digits.push_back(reading.digits[c]);
            }
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    }

    BatchReport report;
    for (auto& r : results) {
        if (!r.error.empty())
            throw std::runtime_error("corpus: " + r.row.image + ": " + r.error);
        std::string truth, got;
        bool all_ok = true;
        for (std::size_t c = 0; c < r.truth_digits.size(); ++c) {
            const int td = r.truth_digits[c];
            const int gd = r.got_digits[c];
            truth += char('0' + td);
            got += char('0' + gd);
            const bool ok = td == gd;
            all_ok = all_ok && ok;
            report.cells++;
            report.cells_correct += ok ? 1 : 0;
            report.per_digit[td].total++;
            report.per_digit[td].correct += ok ? 1 : 0;
            DigitStat& kind = r.truth_half[c] ? report.half_cells : report.full_cells;
            kind.total++;
            kind.correct += ok ? 1 : 0;
            if (!ok) report.confusion[{td, gd}]++;
        }
        r.row.truth = truth;
        r.row.got = got;
        r.row.ok = all_ok;
        report.readings++;
        report.readings_correct += all_ok ? 1 : 0;
        report.rows.push_back(r.row);
    }
    return report;
}

namespace {

void stat_line(std::ofstream& out, const char* name, long long total, long long correct) {
    char buf[128];
    const double acc = total ? double(correct) / double(total) : 0.0;
    std::snprintf(buf, sizeof buf, "%s %lld correct %lld acc %.6f", name, total, correct, acc);
    out << buf << "\n";
}

}  // namespace

void write_report(const BatchReport& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("report: cannot write '" + path + "'");
    out << "REPORT 1\n";
    out << "images " << r.rows.size() << "\n";
    for (const auto& row : r.rows)
        out << "img " << row.image << " truth " << row.truth << " got " << row.got << " ok "
            << (row.ok ? 1 : 0) << "\n";
    stat_line(out, "cells", r.cells, r.cells_correct);
    stat_line(out, "full_cells", r.full_cells.total, r.full_cells.correct);
    stat_line(out, "half_cells", r.half_cells.total, r.half_cells.correct);
    for (int d = 0; d < 10; ++d) {
        char name[16];
        std::snprintf(name, sizeof name, "digit %d n", d);
        stat_line(out, name, r.per_digit[d].total, r.per_digit[d].correct);
    }
    for (const auto& [key, count] : r.confusion)
        out << "confusion " << key.first << " " << key.second << " " << count << "\n";
    stat_line(out, "readings", r.readings, r.readings_correct);
    if (!out) throw std::runtime_error("report: write failed for '" + path + "'");
}

}  // namespace meterocr
