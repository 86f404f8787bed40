// Brute-force reference implementations used to cross-check the library.
// Deliberately independent: plain std::vector loops only, no Eigen, no
// library solve paths.
#pragma once

#include "gpocr/image.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracles {

using Mat = std::vector<std::vector<double>>;

inline Mat identity(std::size_t n) {
    Mat I(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1.0;
    return I;
}

// Gauss-Jordan elimination with partial pivoting.
inline Mat gj_invert(Mat a) {
    const std::size_t n = a.size();
    Mat inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-300) throw std::runtime_error("singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const double d = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

inline std::vector<double> matvec(const Mat& m, const std::vector<double>& v) {
    std::vector<double> out(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

inline std::vector<double> gj_solve(const Mat& a, const std::vector<double>& rhs) {
    return matvec(gj_invert(a), rhs);
}

inline double matern32_ref(double d, double ell) {
    const double a = std::sqrt(3.0) * d / ell;
    return (1.0 + a) * std::exp(-a);
}

// 25 window coordinates, row-major (di,dj) in {-2..2}^2.
inline std::vector<std::pair<double, double>> window_coords_ref() {
    std::vector<std::pair<double, double>> c;
    for (int di = -2; di <= 2; ++di)
        for (int dj = -2; dj <= 2; ++dj) c.emplace_back(di, dj);
    return c;
}

inline Mat window_cov_ref(double ell) {
    const auto coords = window_coords_ref();
    Mat K(25, std::vector<double>(25));
    for (int i = 0; i < 25; ++i)
        for (int j = 0; j < 25; ++j)
            K[i][j] = matern32_ref(std::hypot(coords[i].first - coords[j].first,
                                              coords[i].second - coords[j].second),
                                   ell);
    return K;
}

// Constant-mean GP prediction over one window from an explicit inverse:
// f0 = (sum_i z_i f_i)/(sum z), z = Kinv * 1; fstar = f0 + w . (f - f0).
struct WindowPredictor {
    Mat kinv;
    std::vector<double> z;
    double z_sum = 0.0;
    double ell;

    explicit WindowPredictor(double ell_) : kinv(gj_invert(window_cov_ref(ell_))), ell(ell_) {
        z.assign(25, 0.0);
        for (int i = 0; i < 25; ++i)
            for (int j = 0; j < 25; ++j) z[i] += kinv[i][j];
        for (double v : z) z_sum += v;
    }

    double mle_mean(const double f[25]) const {
        double num = 0.0;
        for (int i = 0; i < 25; ++i) num += z[i] * f[i];
        return num / z_sum;
    }

    double predict(const double f[25], double oy, double ox) const {
        const auto coords = window_coords_ref();
        std::vector<double> kstar(25);
        for (int m = 0; m < 25; ++m)
            kstar[m] = matern32_ref(std::hypot(oy - coords[m].first, ox - coords[m].second), ell);
        const std::vector<double> w = matvec(kinv, kstar);
        const double f0 = mle_mean(f);
        double acc = f0;
        for (int m = 0; m < 25; ++m) acc += w[m] * (f[m] - f0);
        return acc;
    }
};

// Whole-image GP upsample, one window per low-res pixel, replicate border.
inline gpocr::GrayImage gp_upsample_ref(const gpocr::GrayImage& img, int ratio, double ell) {
    const WindowPredictor pred(ell);
    gpocr::GrayImage out(img.width * ratio, img.height * ratio);
    const auto clamp = [&](int v, int n) { return v < 0 ? 0 : (v >= n ? n - 1 : v); };
    for (int i = 0; i < img.height; ++i)
        for (int j = 0; j < img.width; ++j) {
            double f[25];
            int m = 0;
            for (int di = -2; di <= 2; ++di)
                for (int dj = -2; dj <= 2; ++dj)
                    f[m++] = img.at(clamp(i + di, img.height), clamp(j + dj, img.width));
            for (int a = 0; a < ratio; ++a)
                for (int b = 0; b < ratio; ++b) {
                    const double oy = -0.5 + (2.0 * a + 1.0) / (2.0 * ratio);
                    const double ox = -0.5 + (2.0 * b + 1.0) / (2.0 * ratio);
                    out.at(i * ratio + a, j * ratio + b) =
                        gpocr::quantize_intensity(pred.predict(f, oy, ox));
                }
        }
    return out;
}

// Direct (non-separable) Keys bicubic evaluation, a = -0.5.
inline double keys_ref(double s) {
    const double a = -0.5;
    s = std::abs(s);
    if (s <= 1.0) return (a + 2.0) * s * s * s - (a + 3.0) * s * s + 1.0;
    if (s < 2.0) return a * (s * s * s - 5.0 * s * s + 8.0 * s - 4.0);
    return 0.0;
}

inline gpocr::GrayImage bicubic_ref(const gpocr::GrayImage& img, int ratio) {
    gpocr::GrayImage out(img.width * ratio, img.height * ratio);
    const auto clamp = [&](int v, int n) { return v < 0 ? 0 : (v >= n ? n - 1 : v); };
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x) {
            const double sy = (y + 0.5) / ratio - 0.5;
            const double sx = (x + 0.5) / ratio - 0.5;
            const int by = static_cast<int>(std::floor(sy));
            const int bx = static_cast<int>(std::floor(sx));
            double acc = 0.0;
            for (int m = by - 1; m <= by + 2; ++m)
                for (int n = bx - 1; n <= bx + 2; ++n)
                    acc += keys_ref(sy - m) * keys_ref(sx - n) *
                           img.at(clamp(m, img.height), clamp(n, img.width));
            out.at(y, x) = gpocr::quantize_intensity(acc);
        }
    return out;
}

// Normalized Gaussian blur, direct double loop, replicate border.
inline gpocr::GrayImage gaussian_blur_ref(const gpocr::GrayImage& img, int radius, double sigma) {
    gpocr::GrayImage out(img.width, img.height);
    const auto clamp = [&](int v, int n) { return v < 0 ? 0 : (v >= n ? n - 1 : v); };
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            double num = 0.0, den = 0.0;
            for (int dy = -radius; dy <= radius; ++dy)
                for (int dx = -radius; dx <= radius; ++dx) {
                    const double w = std::exp(-(dy * dy + dx * dx) / (2.0 * sigma * sigma));
                    num += w * img.at(clamp(y + dy, img.height), clamp(x + dx, img.width));
                    den += w;
                }
            out.at(y, x) = gpocr::quantize_intensity(num / den);
        }
    return out;
}

// Gaussian-weighted local mean threshold, direct evaluation.
inline gpocr::GrayImage adaptive_threshold_ref(const gpocr::GrayImage& img, int radius, double c) {
    const double sigma = radius / 2.0;
    gpocr::GrayImage out(img.width, img.height);
    const auto clamp = [&](int v, int n) { return v < 0 ? 0 : (v >= n ? n - 1 : v); };
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            double num = 0.0, den = 0.0;
            for (int dy = -radius; dy <= radius; ++dy)
                for (int dx = -radius; dx <= radius; ++dx) {
                    const double w = std::exp(-(dy * dy + dx * dx) / (2.0 * sigma * sigma));
                    num += w * img.at(clamp(y + dy, img.height), clamp(x + dx, img.width));
                    den += w;
                }
            out.at(y, x) = (img.at(y, x) <= num / den - c) ? 0 : 255;
        }
    return out;
}

} // namespace oracles
