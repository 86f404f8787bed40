#include "gpocr/svg.hpp"
#include "gpocr/error.hpp"

#include <cstdio>
#include <fstream>

namespace gpocr {
namespace {

const int kMarginLeft = 60;
const int kMarginRight = 20;
const int kMarginTop = 36;
const int kMarginBottom = 40;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

} // namespace

SvgPlot::SvgPlot(int width, int height, std::string title)
    : width_(width), height_(height), title_(std::move(title)) {}

void SvgPlot::set_range(double x_min, double x_max, double y_min, double y_max) {
    x_min_ = x_min;
    x_max_ = x_max;
    y_min_ = y_min;
    y_max_ = y_max;
    if (x_max_ <= x_min_) x_max_ = x_min_ + 1.0;
    if (y_max_ <= y_min_) y_max_ = y_min_ + 1.0;
}

double SvgPlot::px(double x) const {
    return kMarginLeft + (x - x_min_) / (x_max_ - x_min_) * (width_ - kMarginLeft - kMarginRight);
}

double SvgPlot::py(double y) const {
    return height_ - kMarginBottom -
           (y - y_min_) / (y_max_ - y_min_) * (height_ - kMarginTop - kMarginBottom);
}

void SvgPlot::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                       double stroke_width, const std::string& label) {
    if (pts.empty()) return;
    std::string s = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" +
                    fmt(stroke_width) + "\" points=\"";
    for (const auto& [x, y] : pts) s += fmt(px(x)) + "," + fmt(py(y)) + " ";
    s += "\"/>";
    body_.push_back(s);
    if (!label.empty()) legend_.emplace_back(label, color);
}

void SvgPlot::band(const std::vector<std::pair<double, double>>& lower,
                   const std::vector<std::pair<double, double>>& upper, const std::string& color,
                   double opacity) {
    if (lower.empty() || upper.empty()) return;
    std::string s = "<polygon fill=\"" + color + "\" fill-opacity=\"" + fmt(opacity) +
                    "\" stroke=\"none\" points=\"";
    for (const auto& [x, y] : lower) s += fmt(px(x)) + "," + fmt(py(y)) + " ";
    for (auto it = upper.rbegin(); it != upper.rend(); ++it)
        s += fmt(px(it->first)) + "," + fmt(py(it->second)) + " ";
    s += "\"/>";
    body_.push_back(s);
}

void SvgPlot::point(double x, double y, const std::string& color, double radius) {
    body_.push_back("<circle cx=\"" + fmt(px(x)) + "\" cy=\"" + fmt(py(y)) + "\" r=\"" +
                    fmt(radius) + "\" fill=\"" + color + "\"/>");
}

void SvgPlot::hline(double y, const std::string& color, double stroke_width) {
    body_.push_back("<line x1=\"" + fmt(px(x_min_)) + "\" y1=\"" + fmt(py(y)) + "\" x2=\"" +
                    fmt(px(x_max_)) + "\" y2=\"" + fmt(py(y)) + "\" stroke=\"" + color +
                    "\" stroke-width=\"" + fmt(stroke_width) + "\"/>");
}

void SvgPlot::write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
        << height_ << "\" viewBox=\"0 0 " << width_ << " " << height_ << "\">\n";
    out << "<rect width=\"" << width_ << "\" height=\"" << height_ << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << width_ / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"15\">" << title_ << "</text>\n";

    // axes with min/max tick labels
    const double x0 = px(x_min_), x1 = px(x_max_), y0 = py(y_min_), y1 = py(y_max_);
    out << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x1) << "\" y2=\""
        << fmt(y0) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x0) << "\" y2=\""
        << fmt(y1) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(x0) << "\" y=\"" << fmt(y0 + 18) << "\" font-family=\"sans-serif\" "
        << "font-size=\"11\" text-anchor=\"middle\">" << fmt(x_min_) << "</text>\n";
    out << "<text x=\"" << fmt(x1) << "\" y=\"" << fmt(y0 + 18) << "\" font-family=\"sans-serif\" "
        << "font-size=\"11\" text-anchor=\"middle\">" << fmt(x_max_) << "</text>\n";
    out << "<text x=\"" << fmt(x0 - 8) << "\" y=\"" << fmt(y0 + 4) << "\" font-family=\"sans-serif\" "
        << "font-size=\"11\" text-anchor=\"end\">" << fmt(y_min_) << "</text>\n";
    out << "<text x=\"" << fmt(x0 - 8) << "\" y=\"" << fmt(y1 + 4) << "\" font-family=\"sans-serif\" "
        << "font-size=\"11\" text-anchor=\"end\">" << fmt(y_max_) << "</text>\n";

    for (const auto& s : body_) out << s << "\n";

    double ly = kMarginTop + 6;
    for (const auto& [label, color] : legend_) {
        out << "<rect x=\"" << width_ - 170 << "\" y=\"" << fmt(ly) << "\" width=\"14\" height=\"4\" fill=\""
            << color << "\"/>\n";
        out << "<text x=\"" << width_ - 150 << "\" y=\"" << fmt(ly + 6) << "\" font-family=\"sans-serif\" "
            << "font-size=\"12\">" << label << "</text>\n";
        ly += 18;
    }
    out << "</svg>\n";
    if (!out) throw IoError("short write: " + path);
}

} // namespace gpocr
