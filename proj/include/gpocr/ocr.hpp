#pragma once

#include "gpocr/filters.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gpocr {

struct CorpusEntry {
    std::string image_path;
    std::string ground_truth_path;
};

// External OCR engine. The template names an executable plus arguments;
// {input} is required exactly once. {output_base} present means the engine
// writes <output_base>.txt (file mode); absent means stdout capture.
struct OcrEngine {
    std::string command_template;
    double timeout_seconds = 30.0;
};

struct OcrResult {
    std::vector<std::string> tokens;
    std::string raw_text;
};

enum class Pipeline { Gp, Bicubic, LowRes };

struct PerImageRow {
    std::string id;
    std::string method;
    double accuracy = 0.0;
};

struct MethodSummary {
    std::string method;
    double average = 0.0;
    double variance = 0.0; // population variance
    double max = 0.0;
    double min = 0.0;
    bool has_gain = false; // gain of GP over this method
    double gain = 0.0;
};

struct AccuracyReport {
    std::vector<PerImageRow> per_image;
    std::vector<MethodSummary> summary;
    int ratio = 4;
    double sigma = 10.0;
    std::uint64_t seed = 0;
};

struct BenchmarkOptions {
    int ratio = 4;
    NoiseParams noise;
    std::vector<Pipeline> pipelines = {Pipeline::Gp, Pipeline::Bicubic, Pipeline::LowRes};
    int workers = 4;
    std::string work_dir; // where degraded/processed images are written
};

// Manifest: one line per entry, image path TAB transcript path; relative
// paths resolve against the manifest's directory.
std::vector<CorpusEntry> load_manifest(const std::string& path);

// Whitespace split, leading/trailing ASCII punctuation stripped,
// case-sensitive; bytes >= 0x80 pass through untouched.
std::vector<std::string> tokenize(const std::string& text);

double word_accuracy(const OcrResult& predicted, const std::vector<std::string>& truth);

OcrResult run_ocr(const OcrEngine& engine, const std::string& img_path);

AccuracyReport run_benchmark(const std::vector<CorpusEntry>& corpus, const OcrEngine& engine,
                             const BenchmarkOptions& opts);

// Writes per_image.csv, summary.csv, accuracy.svg, gain.svg.
void emit_report(const AccuracyReport& report, const std::string& out_dir);

const char* pipeline_name(Pipeline p);

} // namespace gpocr
