#include "gpocr/filters.hpp"
#include "gpocr/error.hpp"
#include "gpocr/rng.hpp"

#include <cmath>
#include <vector>

namespace gpocr {

GrayImage bilateral_filter(const GrayImage& img, const BilateralParams& p) {
    if (p.radius < 1 || p.sigma_space <= 0.0 || p.sigma_intensity <= 0.0)
        throw Error("invalid bilateral parameters");
    const int r = p.radius;
    const int side = 2 * r + 1;

    std::vector<double> spatial(static_cast<std::size_t>(side) * side);
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
            spatial[static_cast<std::size_t>(dy + r) * side + (dx + r)] =
                std::exp(-(dy * dy + dx * dx) / (2.0 * p.sigma_space * p.sigma_space));

    // intensity deltas are integers in [0,255]: table instead of exp per tap
    double range[256];
    for (int d = 0; d < 256; ++d)
        range[d] = std::exp(-(static_cast<double>(d) * d) / (2.0 * p.sigma_intensity * p.sigma_intensity));

    GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const int c = img.at(y, x);
            double num = 0.0, den = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) {
                    const int v = pixel_at(img, y + dy, x + dx);
                    const double w =
                        spatial[static_cast<std::size_t>(dy + r) * side + (dx + r)] * range[std::abs(v - c)];
                    num += w * v;
                    den += w;
                }
            }
            out.at(y, x) = quantize_intensity(num / den);
        }
    }
    return out;
}

GrayImage adaptive_gaussian_threshold(const GrayImage& img, const ThresholdParams& p) {
    if (p.block_radius < 1) throw Error("invalid threshold parameters");
    const int r = p.block_radius;
    const double sigma = r / 2.0;

    std::vector<double> g(2 * r + 1);
    double gsum = 0.0;
    for (int d = -r; d <= r; ++d) {
        g[d + r] = std::exp(-(d * d) / (2.0 * sigma * sigma));
        gsum += g[d + r];
    }
    for (double& v : g) v /= gsum;

    // separable normalized Gaussian mean, replicate border
    std::vector<double> mid(static_cast<std::size_t>(img.width) * img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            double acc = 0.0;
            for (int d = -r; d <= r; ++d) acc += g[d + r] * pixel_at(img, y, x + d);
            mid[static_cast<std::size_t>(y) * img.width + x] = acc;
        }

    GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double mean = 0.0;
            for (int d = -r; d <= r; ++d) {
                int yy = y + d;
                yy = yy < 0 ? 0 : (yy >= img.height ? img.height - 1 : yy);
                mean += g[d + r] * mid[static_cast<std::size_t>(yy) * img.width + x];
            }
            out.at(y, x) = (img.at(y, x) <= mean - p.offset_c) ? 0 : 255;
        }
    }
    return out;
}

bool is_near_binary(const GrayImage& img, int delta, double fraction) {
    std::size_t near = 0;
    for (std::uint8_t v : img.data)
        if (v <= delta || v >= 255 - delta) ++near;
    return static_cast<double>(near) / static_cast<double>(img.data.size()) >= fraction;
}

GrayImage add_gaussian_noise(const GrayImage& img, const NoiseParams& p) {
    if (p.sigma < 0.0) throw Error("noise sigma must be >= 0");
    GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        Rng row_rng(substream_seed(p.seed, static_cast<std::uint64_t>(y)));
        for (int x = 0; x < img.width; ++x) {
            const long delta = std::lround(p.sigma * row_rng.gaussian());
            long v = static_cast<long>(img.at(y, x)) + delta;
            if (v < 0) v = 0;
            if (v > 255) v = 255;
            out.at(y, x) = static_cast<std::uint8_t>(v);
        }
    }
    return out;
}

} // namespace gpocr
