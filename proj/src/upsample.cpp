#include "gpocr/upsample.hpp"

namespace gpocr {

double compute_window_mle(const double window[25], const GpWeights& weights) {
    double f0 = 0.0;
    for (int m = 0; m < 25; ++m) f0 += weights.mle_weights(m) * window[m];
    return f0;
}

GrayImage gp_upsample(const GrayImage& img, const UpsampleConfig& cfg) {
    const GpWeights w = precompute_weights(cfg.ratio, cfg.kernel);
    const int r = cfg.ratio;
    GrayImage out(img.width * r, img.height * r);

    double f[25];
    for (int i = 0; i < img.height; ++i) {
        for (int j = 0; j < img.width; ++j) {
            int m = 0;
            for (int di = -2; di <= 2; ++di)
                for (int dj = -2; dj <= 2; ++dj)
                    f[m++] = pixel_at(img, i + di, j + dj, cfg.border);

            const double f0 = compute_window_mle(f, w);
            for (int a = 0; a < r; ++a) {
                for (int b = 0; b < r; ++b) {
                    const Eigen::VectorXd& wv = w.interp_weights[a * r + b];
                    double acc = f0;
                    for (int k = 0; k < 25; ++k) acc += wv(k) * (f[k] - f0);
                    out.at(i * r + a, j * r + b) = quantize_intensity(acc);
                }
            }
        }
    }
    return out;
}

} // namespace gpocr
