#include <doctest.h>

#include <map>

#include "meterocr/reading.hpp"
#include "meterocr/synth.hpp"
#include "test_util.hpp"

using namespace meterocr;

// Zero-noise exhaustive sweep: every digit pair at every roll shift must
// resolve to exactly what the renderer labeled, whether the cell ends up as a
// detectable half-word or collapses to a (possibly truncated) full word.
// This is the contract that makes clean corpora score 100%.

namespace {

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

TEST_CASE("clean roll sweep resolves to the rendered label at every offset") {
    const TemplateSet t = glyph_templates();
    const RecognizerParams p;
    SynthSpec spec;

    int checked = 0;
    int failures = 0;
    for (int d = 0; d < 10; ++d) {
        for (int step = 1; step < 40; ++step) {
            const double offset = step / 40.0;
            auto [img, truth] = render_cell(rolling_wheel(d, offset), spec);
            const CellResult r = classify_cell(clean_cell(img, p), t, p);
            ++checked;

            bool ok;
            if (truth.half)
                ok = r.kind == CellKind::Half && r.above_digit == truth.a &&
                     r.below_digit == truth.b;
            else
                ok = r.kind == CellKind::Full && r.digit == truth.a;
            if (!ok) {
                ++failures;
                MESSAGE("digit ", d, " offset ", offset, ": truth ",
                        (truth.half ? "half " : "full "), truth.a, " got kind ",
                        int(r.kind), " digit ", r.digit, " above ", r.above_digit);
            }
        }
    }
    CHECK(checked == 390);
    CHECK(failures == 0);
}

TEST_CASE("renderer labels and detect_split verdicts agree on clean cells") {
    const RecognizerParams p;
    SynthSpec spec;
    for (int d = 0; d < 10; ++d)
        for (int step = 1; step < 40; ++step) {
            auto [img, truth] = render_cell(rolling_wheel(d, step / 40.0), spec);
            const BinaryImage cleaned = clean_cell(img, p);
            if (ink_bands(cleaned).empty()) continue;
            const SplitDecision s = detect_split(cleaned, p.min_gap, p.min_frag);
            REQUIRE((s.kind == SplitKind::HalfWord) == truth.half);
        }
}
