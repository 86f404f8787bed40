#pragma once

#include "gpocr/image.hpp"

#include <cstdint>

namespace gpocr {

struct BilateralParams {
    int radius = 4;
    double sigma_space = 3.0;
    double sigma_intensity = 30.0;
};

struct ThresholdParams {
    int block_radius = 5;   // Gaussian window (2r+1)^2, sigma = block_radius/2
    double offset_c = 2.0;
};

struct NoiseParams {
    double sigma = 10.0;
    std::uint64_t seed = 0;
};

GrayImage bilateral_filter(const GrayImage& img, const BilateralParams& p);

// Pixel -> 0 iff it is <= (Gaussian-weighted local mean - offset_c), else 255.
GrayImage adaptive_gaussian_threshold(const GrayImage& img, const ThresholdParams& p);

bool is_near_binary(const GrayImage& img, int delta = 20, double fraction = 0.9);

// Additive rounded Gaussian noise, clamped; one RNG substream per row so the
// result is independent of any parallel row schedule.
GrayImage add_gaussian_noise(const GrayImage& img, const NoiseParams& p);

} // namespace gpocr
