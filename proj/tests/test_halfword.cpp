#include <doctest.h>

#include <random>

#include "meterocr/halfword.hpp"
#include "meterocr/reading.hpp"
#include "meterocr/synth.hpp"
#include "test_util.hpp"

using namespace meterocr;

namespace {

// Table 1 of the source material: fragment match errors for the half-word
// whose true pair is (3, 4).
const double kTableAbove[10] = {3.5, 5.8, 4.4, 1.6, 4.9, 4.0, 3.0, 5.4, 3.6, 4.1};
const double kTableBelow[10] = {7.2, 6.4, 6.2, 5.3, 1.5, 6.6, 6.3, 5.7, 5.7, 6.5};

MatchRanking ranking_from(const double errors[10]) {
    MatchRanking r;
    for (int d = 0; d < 10; ++d) r.scores[std::size_t(d)] = {d, errors[d]};
    std::sort(r.scores.begin(), r.scores.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
    return r;
}

TemplateSet glyph_templates() {
    std::map<int, std::vector<ProjectionProfile>> samples;
    SynthSpec spec;
    for (int d = 0; d < 10; ++d) {
        auto [img, truth] = render_cell(full_wheel(d), spec);
        samples[d].push_back(cell_profile(truth.mask, kDefaultProfileLen));
    }
    return train_templates(samples);
}

}  // namespace

TEST_CASE("detect_split calls rendered full words FullWord") {
    SynthSpec spec;
    for (int d = 0; d < 10; ++d) {
        auto [img, truth] = render_cell(full_wheel(d), spec);
        CHECK(detect_split(truth.mask).kind == SplitKind::FullWord);
    }
    const BinaryImage blank = make_binary(10, 10, false);
    CHECK_THROWS_AS(detect_split(blank), std::invalid_argument);
}

TEST_CASE("detect_split finds the rendered gap of a mid-roll cell") {
    SynthSpec spec;
    auto [img, truth] = render_cell(rolling_wheel(3, 0.5), spec);
    REQUIRE(truth.half);
    const SplitDecision d = detect_split(truth.mask);
    REQUIRE(d.kind == SplitKind::HalfWord);
    CHECK(d.gap_top == truth.gap_top);
    CHECK(d.gap_bottom == truth.gap_bottom);
    CHECK(d.above_box.y + d.above_box.h == d.gap_top);
    CHECK(d.below_box.y == d.gap_bottom + 1);
    CHECK(d.above_box.h >= 1);
    CHECK(d.below_box.h >= 1);
}

TEST_CASE("a single 1-row gap stays a full word at min_gap 2") {
    BinaryImage bin = make_binary(10, 20, false);
    for (int y = 2; y < 9; ++y)
        for (int x = 2; x < 8; ++x) bin.at(x, y) = 1;
    for (int y = 10; y < 18; ++y)
        for (int x = 2; x < 8; ++x) bin.at(x, y) = 1;
    CHECK(detect_split(bin, 2, 0.15).kind == SplitKind::FullWord);
    CHECK(detect_split(bin, 1, 0.15).kind == SplitKind::HalfWord);
}

TEST_CASE("detect_split is monotone in min_gap") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        BinaryImage bin = testutil::random_binary(12, 30, 0.3, rng());
        bin.at(5, 1) = 1;  // ensure nonempty
        for (int gap = 1; gap < 6; ++gap) {
            if (detect_split(bin, gap, 0.1).kind == SplitKind::FullWord)
                CHECK(detect_split(bin, gap + 1, 0.1).kind == SplitKind::FullWord);
        }
    }
}

TEST_CASE("fragment sizes gate the half-word verdict") {
    // 3 ink rows above, 14 below on a 40-row cell: at min_frag 0.15 the above
    // fragment (3 < 6 rows) disqualifies the split.
    BinaryImage bin = make_binary(10, 40, false);
    for (int y = 4; y < 7; ++y)
        for (int x = 2; x < 8; ++x) bin.at(x, y) = 1;
    for (int y = 14; y < 28; ++y)
        for (int x = 2; x < 8; ++x) bin.at(x, y) = 1;
    CHECK(detect_split(bin, 2, 0.15).kind == SplitKind::FullWord);
    CHECK(detect_split(bin, 2, 0.05).kind == SplitKind::HalfWord);
}

TEST_CASE("match_half reproduces the published fragment argmins") {
    CHECK(ranking_from(kTableAbove).best() == 3);
    CHECK(ranking_from(kTableBelow).best() == 4);
}

TEST_CASE("a full-height fragment degenerates to a self match") {
    const TemplateSet t = glyph_templates();
    SynthSpec spec;
    auto [img, truth] = render_cell(full_wheel(5), spec);
    const auto bands = ink_bands(truth.mask);
    REQUIRE(bands.size() == 1);
    const Rect box{0, bands[0].top, truth.mask.width, bands[0].bottom - bands[0].top + 1};
    const MatchRanking r = match_half(truth.mask, box, t);
    CHECK(r.best() == 5);
    CHECK(r.best_error() == doctest::Approx(0.0).epsilon(1e-9));

    const BinaryImage blank = make_binary(10, 10, false);
    CHECK_THROWS_AS(match_half(blank, Rect{0, 0, 10, 10}, t), std::invalid_argument);
}

TEST_CASE("resolve_pair applies wheel continuity to the published table") {
    const HalfMatch hm = resolve_pair(ranking_from(kTableAbove), ranking_from(kTableBelow));
    CHECK(hm.above_digit == 3);
    CHECK(hm.below_digit == 4);
    CHECK(hm.pair_error == 1.6 + 1.5);  // exact arithmetic on the published values
    CHECK(hm.raw_above == 3);
    CHECK(hm.raw_below == 4);
}

TEST_CASE("resolve_pair wraps 9 to 0") {
    double above[10] = {1, 1, 1, 1, 1, 1, 1, 1, 1, 0};
    double below[10] = {0, 1, 1, 1, 1, 1, 1, 1, 1, 1};
    const HalfMatch hm = resolve_pair(ranking_from(above), ranking_from(below));
    CHECK(hm.above_digit == 9);
    CHECK(hm.below_digit == 0);
    CHECK(hm.pair_error == 0.0);
}

TEST_CASE("resolve_pair invariants over random rankings") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        double above[10], below[10];
        for (int d = 0; d < 10; ++d) {
            above[d] = double(rng() % 1000) / 100.0;
            below[d] = double(rng() % 1000) / 100.0;
        }
        const MatchRanking ra = ranking_from(above);
        const MatchRanking rb = ranking_from(below);
        const HalfMatch hm = resolve_pair(ra, rb);
        REQUIRE(hm.below_digit == (hm.above_digit + 1) % 10);
        REQUIRE(hm.pair_error >= std::max(ra.best_error(), rb.best_error()));
        // No other continuity pair beats the chosen one; ties go to smaller a.
        for (int a = 0; a < 10; ++a) {
            const double sum = ra.error_of(a) + rb.error_of((a + 1) % 10);
            REQUIRE(sum >= hm.pair_error);
            if (sum == hm.pair_error) REQUIRE(a >= hm.above_digit);
        }
    }
}
