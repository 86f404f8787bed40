// Deterministic stand-in OCR engine for benchmark tests. Quality is a PSNR
// proxy: the received image is compared against the original it was derived
// from (found through the corpus manifest), and the fraction of transcript
// words emitted scales linearly with PSNR between two pinned anchors.
#include "gpocr/error.hpp"
#include "gpocr/image.hpp"
#include "gpocr/ocr.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

using namespace gpocr;

// nearest-neighbor resize to arbitrary target dimensions
GrayImage nearest_resize(const GrayImage& img, int w, int h) {
    GrayImage out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            out.at(y, x) = img.at(static_cast<int>(static_cast<long>(y) * img.height / h),
                                  static_cast<int>(static_cast<long>(x) * img.width / w));
    return out;
}

double psnr(const GrayImage& a, const GrayImage& b) {
    double se = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const double d = static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]);
        se += d * d;
    }
    const double mse = se / static_cast<double>(a.data.size());
    if (mse <= 0.0) return 99.0;
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic PSNR-proxy OCR engine for benchmark tests"};
    std::string manifest_path, input_path, output_base;
    double lo = 15.0, hi = 28.0;
    app.add_option("--manifest", manifest_path, "corpus manifest used to find originals/transcripts")
        ->required();
    app.add_option("--lo", lo, "PSNR mapped to accuracy 0")->capture_default_str();
    app.add_option("--hi", hi, "PSNR mapped to accuracy 1")->capture_default_str();
    app.add_option("input", input_path, "image to recognize; basename must start with e<index>.")
        ->required();
    app.add_option("output_base", output_base, "if given, write <output_base>.txt instead of stdout");
    CLI11_PARSE(app, argc, argv);

    try {
        const std::string base = std::filesystem::path(input_path).filename().string();
        const auto dot = base.find('.');
        const std::string id = dot == std::string::npos ? base : base.substr(0, dot);
        if (id.size() < 2 || id[0] != 'e')
            throw Error("input filename must start with e<index>.: " + base);
        const std::size_t index = std::stoul(id.substr(1));

        const auto corpus = load_manifest(manifest_path);
        if (index >= corpus.size())
            throw Error("entry index out of range for manifest: " + id);

        const GrayImage reference = load_image(corpus[index].image_path);
        GrayImage received = load_image(input_path);
        if (received.width != reference.width || received.height != reference.height)
            received = nearest_resize(received, reference.width, reference.height);

        const double quality = psnr(received, reference);
        double acc = (quality - lo) / (hi - lo);
        if (acc < 0.0) acc = 0.0;
        if (acc > 1.0) acc = 1.0;

        std::ifstream tin(corpus[index].ground_truth_path, std::ios::binary);
        std::ostringstream ss;
        ss << tin.rdbuf();
        const auto words = tokenize(ss.str());
        const std::size_t k = static_cast<std::size_t>(
            std::lround(acc * static_cast<double>(words.size())));

        std::string text;
        for (std::size_t i = 0; i < k; ++i) {
            if (i) text += ' ';
            text += words[i];
        }
        text += '\n';

        if (!output_base.empty()) {
            std::ofstream out(output_base + ".txt", std::ios::binary);
            if (!out) throw IoError("cannot write " + output_base + ".txt");
            out << text;
        } else {
            std::fputs(text.c_str(), stdout);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "mock_ocr: %s\n", e.what());
        return 1;
    }
    return 0;
}
