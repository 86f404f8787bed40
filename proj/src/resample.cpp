#include "gpocr/resample.hpp"
#include "gpocr/error.hpp"

#include <cmath>
#include <vector>

namespace gpocr {
namespace {

double keys_cubic(double s) {
    const double a = -0.5;
    s = std::abs(s);
    if (s <= 1.0) return (a + 2.0) * s * s * s - (a + 3.0) * s * s + 1.0;
    if (s < 2.0) return a * (s * s * s - 5.0 * s * s + 8.0 * s - 4.0);
    return 0.0;
}

int clamp_idx(int v, int n) { return v < 0 ? 0 : (v >= n ? n - 1 : v); }

// Per output phase (x mod r): base-offset and 4 kernel taps for the source
// coordinate (x+0.5)/r - 0.5.
struct Phase {
    int base;
    double w[4];
};

std::vector<Phase> make_phases(int r) {
    std::vector<Phase> phases(r);
    for (int p = 0; p < r; ++p) {
        const double s = (p + 0.5) / r - 0.5;
        const int base = static_cast<int>(std::floor(s));
        const double t = s - base;
        phases[p].base = base;
        for (int k = -1; k <= 2; ++k) phases[p].w[k + 1] = keys_cubic(t - k);
    }
    return phases;
}

} // namespace

GrayImage bicubic_upsample(const GrayImage& img, int ratio) {
    if (ratio < 2 || ratio > 8) throw Error("upsample ratio must be in [2,8]");
    const auto phases = make_phases(ratio);
    const int oh = img.height * ratio, ow = img.width * ratio;

    // horizontal pass at source height, then vertical; quantize only at the end
    std::vector<double> mid(static_cast<std::size_t>(img.height) * ow);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < ow; ++x) {
            const Phase& ph = phases[x % ratio];
            const int sx = x / ratio + ph.base;
            double acc = 0.0;
            for (int k = -1; k <= 2; ++k)
                acc += ph.w[k + 1] * img.at(y, clamp_idx(sx + k, img.width));
            mid[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    }

    GrayImage out(ow, oh);
    for (int y = 0; y < oh; ++y) {
        const Phase& ph = phases[y % ratio];
        const int sy = y / ratio + ph.base;
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int k = -1; k <= 2; ++k)
                acc += ph.w[k + 1] * mid[static_cast<std::size_t>(clamp_idx(sy + k, img.height)) * ow + x];
            out.at(y, x) = quantize_intensity(acc);
        }
    }
    return out;
}

GrayImage nearest_upsample(const GrayImage& img, int ratio) {
    if (ratio < 1) throw Error("nearest ratio must be >= 1");
    GrayImage out(img.width * ratio, img.height * ratio);
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x)
            out.at(y, x) = img.at(y / ratio, x / ratio);
    return out;
}

GrayImage box_downsample(const GrayImage& img, int ratio) {
    if (ratio < 2) throw Error("downsample ratio must be >= 2");
    const int oh = img.height / ratio, ow = img.width / ratio;
    if (oh == 0 || ow == 0)
        throw ImageTooSmall("cannot downsample " + std::to_string(img.width) + "x" +
                            std::to_string(img.height) + " by " + std::to_string(ratio));
    GrayImage out(ow, oh);
    const double inv = 1.0 / (static_cast<double>(ratio) * ratio);
    for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
            double sum = 0.0;
            for (int dy = 0; dy < ratio; ++dy)
                for (int dx = 0; dx < ratio; ++dx) sum += img.at(y * ratio + dy, x * ratio + dx);
            out.at(y, x) = quantize_intensity(sum * inv);
        }
    }
    return out;
}

} // namespace gpocr
