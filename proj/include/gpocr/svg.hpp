#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gpocr {

// Minimal deterministic SVG line/scatter plot writer.
class SvgPlot {
public:
    SvgPlot(int width, int height, std::string title);

    void set_range(double x_min, double x_max, double y_min, double y_max);

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                  double stroke_width, const std::string& label = "");
    // Filled region between two series sharing x values.
    void band(const std::vector<std::pair<double, double>>& lower,
              const std::vector<std::pair<double, double>>& upper, const std::string& color,
              double opacity);
    void point(double x, double y, const std::string& color, double radius);
    void hline(double y, const std::string& color, double stroke_width);

    void write(const std::string& path) const;

private:
    double px(double x) const;
    double py(double y) const;

    int width_, height_;
    std::string title_;
    double x_min_ = 0, x_max_ = 1, y_min_ = 0, y_max_ = 1;
    std::vector<std::string> body_;
    std::vector<std::pair<std::string, std::string>> legend_; // label, color
};

} // namespace gpocr
