#include <doctest.h>

#include <random>

#include "meterocr/reference.hpp"
#include "meterocr/synth.hpp"
#include "meterocr/topo.hpp"
#include "test_util.hpp"

using namespace meterocr;

namespace {

MatchRanking ranking_with_best(int best) {
    MatchRanking r;
    int slot = 0;
    r.scores[std::size_t(slot++)] = {best, 0.1};
    for (int d = 0; d < 10; ++d)
        if (d != best) r.scores[std::size_t(slot++)] = {d, 0.5 + 0.01 * d};
    return r;
}

BinaryImage clean_glyph(int digit) {
    SynthSpec spec;
    spec.reading = {full_wheel(digit)};
    auto [img, truth] = render_cell(full_wheel(digit), spec);
    return truth.mask;
}

}  // namespace

TEST_CASE("label_components basics") {
    const BinaryImage empty = make_binary(5, 4, false);
    CHECK(label_components(empty, Connectivity::Eight).component_count == 0);

    BinaryImage diag = make_binary(4, 4, false);
    diag.at(1, 1) = 1;
    diag.at(2, 2) = 1;
    CHECK(label_components(diag, Connectivity::Eight).component_count == 1);
    CHECK(label_components(diag, Connectivity::Four).component_count == 2);

    // First-encounter numbering: scan order decides ids.
    BinaryImage two = make_binary(5, 3, false);
    two.at(4, 0) = 1;
    two.at(0, 2) = 1;
    const LabelMap m = label_components(two, Connectivity::Eight);
    CHECK(m.labels[4] == 1);
    CHECK(m.labels[std::size_t(2) * 5] == 2);
    CHECK(m.areas[1] == 1);
    CHECK(m.boxes[2].x == 0);
    CHECK(m.boxes[2].y == 2);
}

TEST_CASE("label_components equals the flood-fill oracle exactly") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 250; ++trial) {
        const int w = 1 + int(rng() % 64);
        const int h = 1 + int(rng() % 64);
        const double density = 0.2 + 0.6 * double(rng() % 100) / 100.0;
        const BinaryImage bin = testutil::random_binary(w, h, density, rng());
        for (Connectivity conn : {Connectivity::Four, Connectivity::Eight}) {
            const LabelMap got = label_components(bin, conn);
            const LabelMap want = ref::label_components(bin, conn);
            REQUIRE(got.component_count == want.component_count);
            REQUIRE(got.labels == want.labels);
            REQUIRE(got.areas == want.areas);
            for (std::int32_t id = 1; id <= got.component_count; ++id) {
                REQUIRE(got.boxes[id].x == want.boxes[id].x);
                REQUIRE(got.boxes[id].y == want.boxes[id].y);
                REQUIRE(got.boxes[id].w == want.boxes[id].w);
                REQUIRE(got.boxes[id].h == want.boxes[id].h);
            }
        }
    }
}

TEST_CASE("label_components on a raster large enough for strip parallelism") {
    const BinaryImage bin = testutil::random_binary(512, 512, 0.5, 77);
    for (Connectivity conn : {Connectivity::Four, Connectivity::Eight}) {
        const LabelMap got = label_components(bin, conn);
        const LabelMap want = ref::label_components(bin, conn);
        CHECK(got.labels == want.labels);
        CHECK(got.areas == want.areas);
    }
}

TEST_CASE("4-connected components refine 8-connected ones") {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 40; ++trial) {
        const BinaryImage bin = testutil::random_binary(30, 30, 0.5, rng());
        const LabelMap m4 = label_components(bin, Connectivity::Four);
        const LabelMap m8 = label_components(bin, Connectivity::Eight);
        CHECK(m4.component_count >= m8.component_count);
        // Each 4-component maps into exactly one 8-component.
        std::vector<std::int32_t> into(std::size_t(m4.component_count) + 1, 0);
        for (std::size_t i = 0; i < bin.bits.size(); ++i) {
            if (!bin.bits[i]) continue;
            std::int32_t& slot = into[m4.labels[i]];
            if (slot == 0)
                slot = m8.labels[i];
            else
                REQUIRE(slot == m8.labels[i]);
        }
        // Foreground pixel count equals the area total.
        std::uint64_t fg = 0, areas = 0;
        for (auto b : bin.bits) fg += b ? 1 : 0;
        for (std::int32_t id = 1; id <= m8.component_count; ++id) areas += m8.areas[id];
        CHECK(fg == areas);
    }
}

TEST_CASE("hole_features basics") {
    const BinaryImage blank = make_binary(6, 6, false);
    CHECK(hole_features(blank).hole_count == 0);

    BinaryImage ringed = make_binary(7, 7, false);
    for (int y = 1; y <= 3; ++y)
        for (int x = 2; x <= 4; ++x) ringed.at(x, y) = 1;
    ringed.at(3, 2) = 0;  // one enclosed pixel
    const HoleFeatures f = hole_features(ringed);
    REQUIRE(f.hole_count == 1);
    CHECK(f.centroids[0].first == doctest::Approx((3 + 0.5) / 7.0));
    CHECK(f.centroids[0].second == doctest::Approx((2 + 0.5) / 7.0));
}

TEST_CASE("glyph hole topology matches the odometer font") {
    for (int d : {1, 2, 3, 5, 7}) CHECK(hole_features(clean_glyph(d)).hole_count == 0);
    for (int d : {0, 4, 6, 9}) CHECK(hole_features(clean_glyph(d)).hole_count == 1);
    CHECK(hole_features(clean_glyph(8)).hole_count == 2);

    CHECK(hole_features(clean_glyph(6)).centroids[0].second > 0.5);
    CHECK(hole_features(clean_glyph(9)).centroids[0].second < 0.5);
}

TEST_CASE("hole_features ignores exterior specks") {
    BinaryImage glyph = clean_glyph(8);
    const HoleFeatures before = hole_features(glyph);
    glyph.at(0, 0) = 1;  // isolated border speck
    glyph.at(glyph.width - 1, glyph.height - 1) = 1;
    CHECK(hole_features(glyph).hole_count == before.hole_count);
}

TEST_CASE("disambiguate_5689 rule table") {
    HoleFeatures none{0, {}};
    HoleFeatures one_low{1, {{0.5, 0.72}}};
    HoleFeatures one_high{1, {{0.5, 0.28}}};
    HoleFeatures one_mid{1, {{0.5, 0.52}}};
    HoleFeatures two{2, {{0.5, 0.3}, {0.5, 0.7}}};
    HoleFeatures many{3, {{0.2, 0.2}, {0.5, 0.5}, {0.8, 0.8}}};

    CHECK(disambiguate_5689(ranking_with_best(9), two) == 8);
    CHECK(disambiguate_5689(ranking_with_best(6), none) == 5);
    CHECK(disambiguate_5689(ranking_with_best(5), one_low) == 6);
    CHECK(disambiguate_5689(ranking_with_best(8), one_high) == 9);
    CHECK(disambiguate_5689(ranking_with_best(5), many) == 5);

    // Ambiguous centroid falls back to the better ranked of {6,9}.
    MatchRanking r = ranking_with_best(8);
    for (auto& s : r.scores) {
        if (s.first == 9) s.second = 0.2;
        if (s.first == 6) s.second = 0.3;
    }
    CHECK(disambiguate_5689(r, one_mid) == 9);

    CHECK_THROWS_AS(disambiguate_5689(ranking_with_best(3), none), std::invalid_argument);
}
