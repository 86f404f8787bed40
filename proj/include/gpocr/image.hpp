#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace gpocr {

enum class BorderPolicy { Replicate };

// 8-bit grayscale image, row-major. Immutable by convention once built:
// operations return new images instead of mutating shared ones.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t& at(int row, int col) {
        return data[static_cast<std::size_t>(row) * width + col];
    }
    std::uint8_t at(int row, int col) const {
        return data[static_cast<std::size_t>(row) * width + col];
    }

    bool operator==(const GrayImage&) const = default;
};

// Out-of-range indices clamp to the nearest valid pixel (Replicate).
inline std::uint8_t pixel_at(const GrayImage& img, int row, int col,
                             BorderPolicy policy = BorderPolicy::Replicate) {
    (void)policy; // single policy today
    if (row < 0) row = 0;
    if (row >= img.height) row = img.height - 1;
    if (col < 0) col = 0;
    if (col >= img.width) col = img.width - 1;
    return img.at(row, col);
}

// Round half-up, clamp to [0,255]. The one quantization rule used everywhere.
inline std::uint8_t quantize_intensity(double v) {
    double r = std::floor(v + 0.5);
    if (r < 0.0) r = 0.0;
    if (r > 255.0) r = 255.0;
    return static_cast<std::uint8_t>(r);
}

// PGM (P5, maxval 255) and PNG (8-bit gray or RGB, converted to luma).
GrayImage load_image(const std::string& path);

// Binary PGM writer; load(save(img)) round-trips bit-exactly.
void save_image(const GrayImage& img, const std::string& path);

} // namespace gpocr
