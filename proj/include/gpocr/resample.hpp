#pragma once

#include "gpocr/image.hpp"

namespace gpocr {

// Keys cubic convolution, a = -0.5, sampling at subcell centers.
GrayImage bicubic_upsample(const GrayImage& img, int ratio);

GrayImage nearest_upsample(const GrayImage& img, int ratio);

// Area average over r x r blocks; trailing partial blocks are dropped.
GrayImage box_downsample(const GrayImage& img, int ratio);

} // namespace gpocr
