#pragma once

// Shared helpers for the test suites.

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <random>
#include <string>

#include "meterocr/raster.hpp"

namespace testutil {

inline meterocr::GrayImage random_gray(int w, int h, std::uint32_t seed) {
    meterocr::GrayImage img = meterocr::make_gray(w, h);
    std::mt19937 rng(seed);
    for (auto& p : img.pixels) p = std::uint8_t(rng() & 0xff);
    return img;
}

inline meterocr::BinaryImage random_binary(int w, int h, double density, std::uint32_t seed) {
    meterocr::BinaryImage img = meterocr::make_binary(w, h);
    std::mt19937 rng(seed);
    const std::uint32_t cut = std::uint32_t(density * 4294967295.0);
    for (auto& b : img.bits) b = rng() < cut ? 1 : 0;
    return img;
}

/// Fresh scratch directory under the system temp dir; removed on destruction.
struct TempDir {
    std::string path;

    explicit TempDir(const std::string& tag) {
        namespace fs = std::filesystem;
        static std::atomic<int> counter{0};
        const auto base = fs::temp_directory_path() /
                          ("meterocr_" + tag + "_" + std::to_string(::getpid()) + "_" +
                           std::to_string(counter++));
        fs::create_directories(base);
        path = base.string();
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const {
        return (std::filesystem::path(path) / name).string();
    }
};

}  // namespace testutil
