// meterocr — odometer-style water meter reader.
//
// Subcommands:
//   recognize  read one meter image and print its value
//   train      build projection templates from a labeled corpus
//   batch      score a labeled corpus and write an accuracy report
//   synth      generate a synthetic labeled corpus
//
// Exit codes: 0 success, 1 usage or file errors, 2 domain failures
// (unreadable meter, digit without samples, empty corpus).

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "meterocr/config.hpp"
#include "meterocr/corpus.hpp"
#include "meterocr/raster.hpp"
#include "meterocr/reading.hpp"
#include "meterocr/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitDomain = 2;

meterocr::Config load_cfg(const std::string& path) {
    if (path.empty()) throw std::runtime_error("a --config file is required");
    return meterocr::load_config(path);
}

meterocr::TemplateSet load_tpl(const meterocr::Config& cfg, const std::string& override_path) {
    const std::string& path = override_path.empty() ? cfg.template_path : override_path;
    if (path.empty())
        throw std::runtime_error("no template file: set 'templates' in the config or pass --templates");
    return meterocr::load_templates(path);
}

void print_cells(const meterocr::MeterReading& reading) {
    for (const auto& c : reading.cells) {
        switch (c.kind) {
            case meterocr::CellKind::Full:
                std::printf("cell %d full %d err %.6f topo %d\n", c.index, c.digit, c.error,
                            c.used_topo ? 1 : 0);
                break;
            case meterocr::CellKind::Half:
                std::printf("cell %d half %d %d pair_err %.6f\n", c.index, c.above_digit,
                            c.below_digit, c.pair_error);
                break;
            case meterocr::CellKind::Unreadable:
                std::printf("cell %d unreadable\n", c.index);
                break;
        }
    }
    for (const auto& w : reading.warnings) std::printf("warning: %s\n", w.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"odometer-style water meter reader"};
    app.require_subcommand(1);

    std::string config_path;
    bool verbose = false;
    app.add_option("--config", config_path, "configuration file")->envname("METEROCR_CONFIG");
    app.add_flag("--verbose", verbose, "per-cell diagnostics");

    auto* rec = app.add_subcommand("recognize", "read one meter image");
    std::string rec_image, rec_templates;
    bool rec_invert = false;
    rec->add_option("image", rec_image, "PGM meter frame")->required();
    rec->add_option("--templates", rec_templates, "template file (overrides config)");
    rec->add_flag("--invert", rec_invert, "light digits on dark drums");

    auto* train = app.add_subcommand("train", "train templates from a labeled corpus");
    std::string train_corpus, train_out;
    int train_profile_len = meterocr::kDefaultProfileLen;
    train->add_option("--corpus", train_corpus, "corpus directory")->required();
    train->add_option("--out", train_out, "output template file")->required();
    train->add_option("--profile-len", train_profile_len, "profile length")
        ->check(CLI::Range(2, 4096));

    auto* batch = app.add_subcommand("batch", "score a labeled corpus");
    std::string batch_corpus, batch_templates, batch_report;
    batch->add_option("--corpus", batch_corpus, "corpus directory")->required();
    batch->add_option("--templates", batch_templates, "template file (overrides config)");
    batch->add_option("--report", batch_report, "report file")->required();

    auto* synth = app.add_subcommand("synth", "generate a synthetic labeled corpus");
    meterocr::CorpusParams sp;
    std::string synth_out;
    synth->add_option("--out", synth_out, "output directory")->required();
    synth->add_option("--n", sp.count, "number of meters")->check(CLI::PositiveNumber);
    synth->add_option("--seed", sp.seed, "RNG seed");
    synth->add_option("--cells", sp.cells, "wheels per meter")->check(CLI::Range(1, 16));
    synth->add_option("--cell-w", sp.cell_w, "cell width")->check(CLI::Range(12, 256));
    synth->add_option("--cell-h", sp.cell_h, "cell height")->check(CLI::Range(16, 256));
    synth->add_option("--sep-rows", sp.separator_rows, "drum separator rows")
        ->check(CLI::Range(1, 64));
    synth->add_option("--border", sp.border_px, "frame border thickness")
        ->check(CLI::Range(1, 64));
    synth->add_option("--rolling-frac", sp.rolling_frac, "fraction of mid-roll wheels")
        ->check(CLI::Range(0.0, 1.0));
    synth->add_option("--offset-min", sp.offset_min, "min roll offset");
    synth->add_option("--offset-max", sp.offset_max, "max roll offset");
    synth->add_option("--sigma", sp.noise_sigma, "Gaussian noise sigma")
        ->check(CLI::Range(0.0, 64.0));
    synth->add_option("--salt-pepper", sp.salt_pepper, "salt-and-pepper rate")
        ->check(CLI::Range(0.0, 0.2));

    CLI11_PARSE(app, argc, argv);

    try {
        if (rec->parsed()) {
            meterocr::Config cfg = load_cfg(config_path);
            if (rec_invert) cfg.params.invert = true;
            const meterocr::TemplateSet tpl = load_tpl(cfg, rec_templates);
            const meterocr::GrayImage frame = meterocr::load_pgm(rec_image);
            const meterocr::MeterReading reading =
                meterocr::read_frame(frame, cfg.geometry, tpl, cfg.params);
            std::string digits;
            for (int d : reading.digits) digits += char('0' + d);
            std::printf("%s value=%llu warnings=%zu\n", digits.c_str(),
                        (unsigned long long)reading.value, reading.warnings.size());
            if (verbose) print_cells(reading);
            return reading.has_unreadable() ? kExitDomain : kExitOk;
        }
        if (train->parsed()) {
            const meterocr::Config cfg = load_cfg(config_path);
            try {
                const meterocr::TemplateSet tpl =
                    meterocr::train_from_corpus(train_corpus, cfg, train_profile_len);
                meterocr::save_templates(tpl, train_out);
                long long total = 0;
                for (int c : tpl.sample_counts) total += c;
                std::printf("trained %lld samples -> %s\n", total, train_out.c_str());
            } catch (const meterocr::MissingDigitError& e) {
                std::fprintf(stderr, "meterocr: %s\n", e.what());
                return kExitDomain;
            }
            return kExitOk;
        }
        if (batch->parsed()) {
            const meterocr::Config cfg = load_cfg(config_path);
            const meterocr::TemplateSet tpl = load_tpl(cfg, batch_templates);
            meterocr::BatchReport report;
            try {
                report = meterocr::run_batch(batch_corpus, cfg, tpl);
            } catch (const std::runtime_error& e) {
                const std::string what = e.what();
                if (what.find("no labeled images") != std::string::npos) {
                    std::fprintf(stderr, "meterocr: %s\n", what.c_str());
                    return kExitDomain;
                }
                throw;
            }
            meterocr::write_report(report, batch_report);
            std::printf("readings %lld correct %lld acc %.6f\n", report.readings,
                        report.readings_correct, report.reading_accuracy());
            return kExitOk;
        }
        if (synth->parsed()) {
            meterocr::generate_corpus(sp, synth_out);
            std::printf("wrote %d meters to %s (seed %u)\n", sp.count, synth_out.c_str(),
                        sp.seed);
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "meterocr: %s\n", e.what());
        return kExitError;
    }
    return kExitError;
}
