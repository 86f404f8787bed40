#include "gpocr/demo1d.hpp"
#include "gpocr/error.hpp"
#include "gpocr/filters.hpp"
#include "gpocr/image.hpp"
#include "gpocr/kernel.hpp"
#include "gpocr/ocr.hpp"
#include "gpocr/resample.hpp"
#include "gpocr/upsample.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace {

using namespace gpocr;

struct UpsampleArgs {
    std::string input, output, method = "gp";
    int ratio = 4;
    double ell = 0.0; // 0 = derive from image dimensions
};

struct PipelineArgs {
    UpsampleArgs up;
    BilateralParams bilateral;
    ThresholdParams threshold;
    int near_delta = 20;
    double near_fraction = 0.9;
    bool force_threshold = false;
    bool no_threshold = false;
};

GrayImage run_upsample(const UpsampleArgs& a, bool log_ell) {
    const GrayImage img = load_image(a.input);
    if (a.method == "nearest") return nearest_upsample(img, a.ratio);
    if (a.method == "bicubic") return bicubic_upsample(img, a.ratio);
    const double ell = a.ell > 0.0 ? a.ell : default_length_scale(img.height, img.width);
    const KernelConfig cfg{1.0, ell, 1.5};
    const GpWeights w = precompute_weights(a.ratio, cfg);
    if (log_ell) std::fprintf(stderr, "ell=%g jitter_used=%g\n", ell, w.jitter_used);
    return gp_upsample(img, UpsampleConfig{a.ratio, cfg});
}

void write_config_echo(const CLI::App& sub, const std::string& out_dir) {
    std::ofstream out(out_dir + "/config.echo.txt");
    if (!out) throw IoError("cannot write config echo");
    out << sub.config_to_str(true, false);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"document-image super-resolution and OCR benchmark toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; CLI flags take precedence");

    UpsampleArgs up_args;
    auto* up = app.add_subcommand("upsample", "upsample one image");
    up->add_option("input", up_args.input, "input image (PGM or PNG)")->required();
    up->add_option("output", up_args.output, "output PGM path")->required();
    up->add_option("-m,--method", up_args.method, "gp, bicubic, or nearest")
        ->check(CLI::IsMember({"gp", "bicubic", "nearest"}))
        ->capture_default_str();
    up->add_option("-r,--ratio", up_args.ratio, "integer upsampling ratio")
        ->check(CLI::Range(2, 8))
        ->capture_default_str();
    up->add_option("--ell", up_args.ell, "length scale override (default: derived from image size)")
        ->check(CLI::PositiveNumber);

    PipelineArgs pl;
    auto* pipe = app.add_subcommand("pipeline", "upsample, bilateral filter, conditional threshold");
    pipe->add_option("input", pl.up.input, "input image")->required();
    pipe->add_option("output", pl.up.output, "output PGM path")->required();
    pipe->add_option("-m,--method", pl.up.method, "gp or bicubic")
        ->check(CLI::IsMember({"gp", "bicubic"}))
        ->capture_default_str();
    pipe->add_option("-r,--ratio", pl.up.ratio, "integer upsampling ratio")
        ->check(CLI::Range(2, 8))
        ->capture_default_str();
    pipe->add_option("--ell", pl.up.ell, "length scale override")->check(CLI::PositiveNumber);
    pipe->add_option("--bilateral-radius", pl.bilateral.radius, "bilateral window radius")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    pipe->add_option("--sigma-space", pl.bilateral.sigma_space, "bilateral spatial sigma")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    pipe->add_option("--sigma-intensity", pl.bilateral.sigma_intensity, "bilateral intensity sigma")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    pipe->add_option("--block-radius", pl.threshold.block_radius, "threshold window radius")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    pipe->add_option("--offset-c", pl.threshold.offset_c, "threshold offset below local mean")
        ->capture_default_str();
    pipe->add_option("--near-delta", pl.near_delta, "near-binary intensity band")
        ->check(CLI::Range(0, 127))
        ->capture_default_str();
    pipe->add_option("--near-fraction", pl.near_fraction, "near-binary pixel fraction")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    auto* force_flag = pipe->add_flag("--force-threshold", pl.force_threshold, "threshold even when near-binary");
    pipe->add_flag("--no-threshold", pl.no_threshold, "never threshold")->excludes(force_flag);

    struct {
        std::string input, output;
        int ratio = 4;
        double sigma = 10.0;
        std::uint64_t seed = 0;
    } dg;
    auto* degrade = app.add_subcommand("degrade", "box-downsample and add Gaussian noise");
    degrade->add_option("input", dg.input, "input image")->required();
    degrade->add_option("output", dg.output, "output PGM path")->required();
    degrade->add_option("-r,--ratio", dg.ratio, "downsampling ratio")
        ->check(CLI::Range(2, 16))
        ->capture_default_str();
    degrade->add_option("--sigma", dg.sigma, "noise sigma")->check(CLI::NonNegativeNumber)->capture_default_str();
    degrade->add_option("--seed", dg.seed, "noise RNG seed")->capture_default_str();

    struct {
        std::string manifest, engine, out_dir, pipelines = "gp,bicubic,lowres";
        int ratio = 4;
        double sigma = 10.0;
        std::uint64_t seed = 0;
        int workers = 4;
        double timeout = 30.0;
    } ev;
    auto* eval = app.add_subcommand("eval", "run the OCR benchmark over a corpus manifest");
    eval->add_option("--manifest", ev.manifest, "TSV manifest: image<TAB>transcript per line")->required();
    eval->add_option("--engine", ev.engine,
                     "engine template with {input} and optional {output_base}")
        ->envname("GPOCR_ENGINE")
        ->required();
    eval->add_option("--out", ev.out_dir, "report output directory")->required();
    eval->add_option("-r,--ratio", ev.ratio, "degradation ratio")
        ->check(CLI::Range(2, 8))
        ->capture_default_str();
    eval->add_option("--sigma", ev.sigma, "degradation noise sigma")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    eval->add_option("--seed", ev.seed, "degradation RNG seed")->capture_default_str();
    eval->add_option("--pipelines", ev.pipelines, "comma list from {gp,bicubic,lowres}")
        ->capture_default_str();
    eval->add_option("--workers", ev.workers, "parallel worker cap")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    eval->add_option("--timeout", ev.timeout, "per-image engine timeout, seconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    struct {
        std::uint64_t seed = 42;
        std::string out = "demo1d.csv", svg;
    } demo;
    auto* demo1d = app.add_subcommand("demo1d", "1-D GP regression demo (SE vs Matérn-3/2)");
    demo1d->add_option("--seed", demo.seed, "RNG seed")->capture_default_str();
    demo1d->add_option("--out", demo.out, "CSV output path")->capture_default_str();
    demo1d->add_option("--svg", demo.svg, "SVG output path (default: CSV path with .svg)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (up->parsed()) {
            const GrayImage out = run_upsample(up_args, true);
            save_image(out, up_args.output);
        } else if (pipe->parsed()) {
            GrayImage img = run_upsample(pl.up, true);
            std::fprintf(stderr, "stage upsample[%s] ratio=%d: ok\n", pl.up.method.c_str(), pl.up.ratio);
            img = bilateral_filter(img, pl.bilateral);
            std::fprintf(stderr, "stage bilateral radius=%d sigma_space=%g sigma_intensity=%g: ok\n",
                         pl.bilateral.radius, pl.bilateral.sigma_space, pl.bilateral.sigma_intensity);
            bool run_thresh;
            const char* why;
            if (pl.no_threshold) {
                run_thresh = false;
                why = "--no-threshold";
            } else if (pl.force_threshold) {
                run_thresh = true;
                why = "forced";
            } else if (is_near_binary(img, pl.near_delta, pl.near_fraction)) {
                run_thresh = false;
                why = "near-binary";
            } else {
                run_thresh = true;
                why = "not near-binary";
            }
            if (run_thresh) {
                img = adaptive_gaussian_threshold(img, pl.threshold);
                std::fprintf(stderr, "stage threshold block_radius=%d offset_c=%g: ran (%s)\n",
                             pl.threshold.block_radius, pl.threshold.offset_c, why);
            } else {
                std::fprintf(stderr, "stage threshold: skipped (%s)\n", why);
            }
            save_image(img, pl.up.output);
        } else if (degrade->parsed()) {
            const GrayImage img = load_image(dg.input);
            const GrayImage low = box_downsample(img, dg.ratio);
            save_image(add_gaussian_noise(low, NoiseParams{dg.sigma, dg.seed}), dg.output);
        } else if (eval->parsed()) {
            const auto corpus = load_manifest(ev.manifest);
            BenchmarkOptions opts;
            opts.ratio = ev.ratio;
            opts.noise = NoiseParams{ev.sigma, ev.seed};
            opts.workers = ev.workers;
            opts.work_dir = ev.out_dir + "/work";
            opts.pipelines.clear();
            std::stringstream ss(ev.pipelines);
            std::string name;
            while (std::getline(ss, name, ',')) {
                if (name == "gp")
                    opts.pipelines.push_back(Pipeline::Gp);
                else if (name == "bicubic")
                    opts.pipelines.push_back(Pipeline::Bicubic);
                else if (name == "lowres")
                    opts.pipelines.push_back(Pipeline::LowRes);
                else
                    throw Error("unknown pipeline: " + name);
            }
            const OcrEngine engine{ev.engine, ev.timeout};
            const AccuracyReport report = run_benchmark(corpus, engine, opts);
            emit_report(report, ev.out_dir);
            write_config_echo(*eval, ev.out_dir);
            std::printf("%-8s %-10s %-10s %-10s %-10s %s\n", "method", "average", "variance", "max",
                        "min", "gp_relative_increase");
            for (const auto& s : report.summary) {
                if (s.has_gain)
                    std::printf("%-8s %-10.6f %-10.6f %-10.6f %-10.6f %.6f\n", s.method.c_str(),
                                s.average, s.variance, s.max, s.min, s.gain);
                else
                    std::printf("%-8s %-10.6f %-10.6f %-10.6f %-10.6f N/A\n", s.method.c_str(),
                                s.average, s.variance, s.max, s.min);
            }
        } else if (demo1d->parsed()) {
            const Demo1dTable table = demo_1d_fit(demo.seed);
            write_demo_csv(table, demo.out);
            std::string svg_path = demo.svg;
            if (svg_path.empty()) {
                svg_path = demo.out;
                const auto dot = svg_path.find_last_of('.');
                if (dot != std::string::npos) svg_path.resize(dot);
                svg_path += ".svg";
            }
            write_demo_svg(table, svg_path);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
