#include <doctest.h>

#include <fstream>
#include <random>

#include "meterocr/raster.hpp"
#include "test_util.hpp"

using namespace meterocr;

namespace {

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(bool(in));
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_bytes(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(data.data(), std::streamsize(data.size()));
}

}  // namespace

TEST_CASE("pgm payload is taken verbatim") {
    testutil::TempDir tmp("raster");
    const std::string path = tmp.file("a.pgm");
    write_bytes(path, std::string("P5\n2 2\n255\n") + '\0' + char(255) + char(128) + char(7));
    const GrayImage img = load_pgm(path);
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img.pixels == std::vector<std::uint8_t>{0, 255, 128, 7});
}

TEST_CASE("pgm header comments are tolerated on read") {
    testutil::TempDir tmp("raster");
    const std::string path = tmp.file("c.pgm");
    write_bytes(path, std::string("P5\n# a comment line\n2 1 # trailing\n255\n") + char(9) +
                          char(10));
    const GrayImage img = load_pgm(path);
    CHECK(img.width == 2);
    CHECK(img.pixels == std::vector<std::uint8_t>{9, 10});
}

TEST_CASE("pgm errors are reported distinctly") {
    testutil::TempDir tmp("raster");
    CHECK_THROWS_WITH_AS(load_pgm(tmp.file("missing.pgm")),
                         doctest::Contains("cannot open"), std::runtime_error);

    const std::string bad_magic = tmp.file("m.pgm");
    write_bytes(bad_magic, "P6\n1 1\n255\nx");
    CHECK_THROWS_WITH_AS(load_pgm(bad_magic), doctest::Contains("bad magic"),
                         std::runtime_error);

    const std::string bad_maxval = tmp.file("v.pgm");
    write_bytes(bad_maxval, "P5\n1 1\n65535\nxx");
    CHECK_THROWS_WITH_AS(load_pgm(bad_maxval), doctest::Contains("maxval"),
                         std::runtime_error);

    const std::string truncated = tmp.file("t.pgm");
    std::string data = "P5\n4 4\n255\n";
    data.append(15, 'x');  // header promises 16
    write_bytes(truncated, data);
    CHECK_THROWS_WITH_AS(load_pgm(truncated), doctest::Contains("truncated"),
                         std::runtime_error);

    const std::string garbled = tmp.file("g.pgm");
    write_bytes(garbled, "P5\nnot numbers\n");
    CHECK_THROWS_WITH_AS(load_pgm(garbled), doctest::Contains("malformed header"),
                         std::runtime_error);
}

TEST_CASE("save_pgm writes the exact header format") {
    testutil::TempDir tmp("raster");
    GrayImage img = make_gray(1, 1);
    img.pixels[0] = 42;
    const std::string path = tmp.file("one.pgm");
    save_pgm(img, path);
    CHECK(read_bytes(path) == std::string("P5\n1 1\n255\n") + char(42));
}

TEST_CASE("save/load round-trip over random images") {
    testutil::TempDir tmp("raster");
    std::mt19937 rng(99);
    for (int i = 0; i < 100; ++i) {
        const int w = 1 + int(rng() % 40);
        const int h = 1 + int(rng() % 40);
        const GrayImage img = testutil::random_gray(w, h, rng());
        const std::string path = tmp.file("r.pgm");
        save_pgm(img, path);
        const GrayImage back = load_pgm(path);
        CHECK(back.width == w);
        CHECK(back.height == h);
        CHECK(back.pixels == img.pixels);

        // Payload byte-identity: re-saving the loaded image reproduces the file.
        const std::string again = tmp.file("r2.pgm");
        save_pgm(back, again);
        CHECK(read_bytes(path) == read_bytes(again));
    }
}

TEST_CASE("crop basics") {
    GrayImage img = make_gray(3, 3);
    for (int i = 0; i < 9; ++i) img.pixels[std::size_t(i)] = std::uint8_t(i);

    const GrayImage whole = crop(img, Rect{0, 0, 3, 3});
    CHECK(whole.pixels == img.pixels);

    const GrayImage inner = crop(img, Rect{1, 1, 2, 2});
    CHECK(inner.pixels == std::vector<std::uint8_t>{4, 5, 7, 8});

    CHECK_THROWS_AS(crop(img, Rect{1, 1, 3, 3}), std::invalid_argument);
    CHECK_THROWS_AS(crop(img, Rect{-1, 0, 2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(crop(img, Rect{0, 0, 0, 1}), std::invalid_argument);
}

TEST_CASE("crop matches direct indexing on random rectangles") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int w = 2 + int(rng() % 30);
        const int h = 2 + int(rng() % 30);
        const GrayImage img = testutil::random_gray(w, h, rng());
        Rect r;
        r.x = int(rng() % std::uint32_t(w));
        r.y = int(rng() % std::uint32_t(h));
        r.w = 1 + int(rng() % std::uint32_t(w - r.x));
        r.h = 1 + int(rng() % std::uint32_t(h - r.y));
        const GrayImage sub = crop(img, r);
        for (int y = 0; y < r.h; ++y)
            for (int x = 0; x < r.w; ++x) REQUIRE(sub.at(x, y) == img.at(r.x + x, r.y + y));
    }
}
