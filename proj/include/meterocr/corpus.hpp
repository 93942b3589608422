#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "meterocr/config.hpp"
#include "meterocr/projmatch.hpp"
#include "meterocr/reading.hpp"

namespace meterocr {

/// Thrown by train_from_corpus when a digit has no full-word samples.
struct MissingDigitError : std::runtime_error {
    int digit;
    explicit MissingDigitError(int d)
        : std::runtime_error("no full-word samples for digit " + std::to_string(d)),
          digit(d) {}
};

/// Sorted (image, sidecar) pairs: every *.pgm in dir that has a *.pgm.gt.
std::vector<std::pair<std::string, std::string>> list_corpus(const std::string& dir);

/// Trains templates from every full-word cell the sidecars label, running
/// each cell through the same cleaning and profile path the recognizer uses.
TemplateSet train_from_corpus(const std::string& dir, const Config& cfg, int profile_len);

struct DigitStat {
    long long total = 0;
    long long correct = 0;
};

struct BatchRow {
    std::string image;
    std::string truth;
    std::string got;
    bool ok = false;
};

struct BatchReport {
    std::vector<BatchRow> rows;
    long long readings = 0;
    long long readings_correct = 0;
    long long cells = 0;
    long long cells_correct = 0;
    DigitStat full_cells;
    DigitStat half_cells;
    std::array<DigitStat, 10> per_digit{};
    std::map<std::pair<int, int>, long long> confusion;  // (truth, got) -> count

    double reading_accuracy() const {
        return readings ? double(readings_correct) / double(readings) : 0.0;
    }
};

/// Recognizes every corpus image and scores it against the sidecars. Images
/// may be processed concurrently; the report is in sorted-filename order.
BatchReport run_batch(const std::string& dir, const Config& cfg, const TemplateSet& t);

void write_report(const BatchReport& r, const std::string& path);

}  // namespace meterocr
