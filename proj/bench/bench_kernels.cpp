// Compares the OpenMP pixel kernels against their serial reference
// implementations on large random rasters: wall time plus an equality check
// on every run.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>

#include "meterocr/preproc.hpp"
#include "meterocr/reference.hpp"
#include "meterocr/topo.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace meterocr;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <typename F>
double time_best(F&& fn, int iters) {
    double best = 1e300;
    for (int i = 0; i < iters; ++i) {
        const double t0 = now_ms();
        fn();
        best = std::min(best, now_ms() - t0);
    }
    return best;
}

GrayImage random_gray(int w, int h, std::uint32_t seed) {
    GrayImage img = make_gray(w, h);
    std::mt19937 rng(seed);
    for (auto& p : img.pixels) p = std::uint8_t(rng() & 0xff);
    return img;
}

BinaryImage random_binary(int w, int h, double density, std::uint32_t seed) {
    BinaryImage img = make_binary(w, h);
    std::mt19937 rng(seed);
    const std::uint32_t cut = std::uint32_t(density * 4294967295.0);
    for (auto& b : img.bits) b = rng() < cut ? 1 : 0;
    return img;
}

bool same_labels(const LabelMap& a, const LabelMap& b) {
    return a.component_count == b.component_count && a.labels == b.labels &&
           a.areas == b.areas;
}

void row(const char* name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-22s %10.2f ms %10.2f ms %7.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, equal ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    int size = 3072;
    int iters = 3;
    if (argc > 1) size = std::atoi(argv[1]);
    if (argc > 2) iters = std::atoi(argv[2]);

#ifdef _OPENMP
    std::printf("threads: %d, raster: %dx%d, best of %d\n", omp_get_max_threads(), size, size,
                iters);
#else
    std::printf("threads: 1 (no OpenMP), raster: %dx%d, best of %d\n", size, size, iters);
#endif
    std::printf("%-22s %13s %13s %8s\n", "kernel", "serial", "parallel", "speedup");

    const GrayImage gray = random_gray(size, size, 1);
    {
        Histogram256 hs, hp;
        const double ts = time_best([&] { hs = ref::histogram(gray); }, iters);
        const double tp = time_best([&] { hp = histogram(gray); }, iters);
        row("histogram", ts, tp, hs.counts == hp.counts);
    }
    {
        BinaryImage bs, bp;
        const double ts = time_best([&] { bs = ref::binarize(gray, 127); }, iters);
        const double tp = time_best([&] { bp = binarize(gray, 127); }, iters);
        row("binarize", ts, tp, bs.bits == bp.bits);
    }
    for (double density : {0.2, 0.5, 0.7}) {
        const BinaryImage bin = random_binary(size, size, density, 7);
        LabelMap ms, mp;
        const double ts =
            time_best([&] { ms = ref::label_components(bin, Connectivity::Eight); }, iters);
        const double tp =
            time_best([&] { mp = label_components(bin, Connectivity::Eight); }, iters);
        char name[64];
        std::snprintf(name, sizeof name, "label_components d=%.1f", density);
        row(name, ts, tp, same_labels(ms, mp));
    }
    {
        const BinaryImage bin = random_binary(size, size, 0.5, 11);
        BinaryImage bs, bp;
        const double ts = time_best([&] { bs = ref::clear_border(bin); }, iters);
        const double tp = time_best([&] { bp = clear_border(bin); }, iters);
        row("clear_border", ts, tp, bs.bits == bp.bits);
    }
    {
        const BinaryImage bin = random_binary(size, size, 0.4, 13);
        BinaryImage bs, bp;
        const double ts = time_best([&] { bs = ref::remove_small(bin, 16); }, iters);
        const double tp = time_best([&] { bp = remove_small(bin, 16); }, iters);
        row("remove_small", ts, tp, bs.bits == bp.bits);
    }
    return 0;
}
