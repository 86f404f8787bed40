#pragma once

#include "gpocr/image.hpp"
#include "gpocr/kernel.hpp"

namespace gpocr {

struct UpsampleConfig {
    int ratio = 4;
    KernelConfig kernel;
    BorderPolicy border = BorderPolicy::Replicate;
};

// GP posterior-mean upsampling: every low-res pixel (i,j) contributes the
// r x r block of fine pixels predicted from its 5x5 window.
GrayImage gp_upsample(const GrayImage& img, const UpsampleConfig& cfg);

// MLE constant prior mean for one 25-sample window: dot(mle_weights, window).
double compute_window_mle(const double window[25], const GpWeights& weights);

} // namespace gpocr
