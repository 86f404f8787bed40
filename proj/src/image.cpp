#include "gpocr/image.hpp"
#include "gpocr/error.hpp"

#include <png.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace gpocr {
namespace {

// PGM header fields are separated by whitespace; '#' starts a comment that
// runs to end of line.
int next_header_int(std::istream& in, const std::string& path) {
    int c = in.get();
    while (c != EOF && (std::isspace(c) || c == '#')) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        }
        c = in.get();
    }
    if (c == EOF || !std::isdigit(c)) throw MalformedImage("bad PGM header in " + path);
    long v = 0;
    while (c != EOF && std::isdigit(c)) {
        v = v * 10 + (c - '0');
        if (v > 1000000000L) throw MalformedImage("absurd PGM header value in " + path);
        c = in.get();
    }
    if (c != EOF) in.unget();
    return static_cast<int>(v);
}

GrayImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFound(path);
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (magic[0] != 'P' || magic[1] != '5') throw MalformedImage("bad magic in " + path);
    const int w = next_header_int(in, path);
    const int h = next_header_int(in, path);
    const int maxval = next_header_int(in, path);
    if (w < 1 || h < 1) throw MalformedImage("bad dimensions in " + path);
    if (maxval != 255) throw MalformedImage("maxval must be 255 in " + path);
    in.get(); // single whitespace byte before payload
    GrayImage img(w, h);
    in.read(reinterpret_cast<char*>(img.data.data()), static_cast<std::streamsize>(img.data.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.data.size()))
        throw MalformedImage("truncated payload in " + path);
    return img;
}

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::FILE* fp = nullptr;
    ~PngReader() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (fp) std::fclose(fp);
    }
};

GrayImage load_png(const std::string& path) {
    PngReader r;
    r.fp = std::fopen(path.c_str(), "rb");
    if (!r.fp) throw FileNotFound(path);
    unsigned char sig[8];
    if (std::fread(sig, 1, 8, r.fp) != 8 || png_sig_cmp(sig, 0, 8))
        throw MalformedImage("bad PNG signature in " + path);
    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!r.png) throw IoError("png_create_read_struct");
    r.info = png_create_info_struct(r.png);
    if (!r.info) throw IoError("png_create_info_struct");
    if (setjmp(png_jmpbuf(r.png))) throw MalformedImage("libpng failed reading " + path);
    png_init_io(r.png, r.fp);
    png_set_sig_bytes(r.png, 8);
    png_read_info(r.png, r.info);

    const png_uint_32 w = png_get_image_width(r.png, r.info);
    const png_uint_32 h = png_get_image_height(r.png, r.info);
    const int depth = png_get_bit_depth(r.png, r.info);
    const int color = png_get_color_type(r.png, r.info);
    if (depth != 8) throw MalformedImage("PNG bit depth must be 8 in " + path);
    if (color != PNG_COLOR_TYPE_GRAY && color != PNG_COLOR_TYPE_RGB)
        throw MalformedImage("PNG must be 8-bit gray or RGB in " + path);
    if (w < 1 || h < 1) throw MalformedImage("bad dimensions in " + path);
    png_set_interlace_handling(r.png);
    png_read_update_info(r.png, r.info);

    const int ch = (color == PNG_COLOR_TYPE_RGB) ? 3 : 1;
    std::vector<std::uint8_t> raw(static_cast<std::size_t>(w) * h * ch);
    std::vector<png_bytep> rows(h);
    for (png_uint_32 y = 0; y < h; ++y)
        rows[y] = raw.data() + static_cast<std::size_t>(y) * w * ch;
    png_read_image(r.png, rows.data());
    png_read_end(r.png, nullptr);

    GrayImage img(static_cast<int>(w), static_cast<int>(h));
    if (ch == 1) {
        img.data.assign(raw.begin(), raw.end());
    } else {
        for (std::size_t i = 0; i < img.data.size(); ++i) {
            const double lum = 0.299 * raw[3 * i] + 0.587 * raw[3 * i + 1] + 0.114 * raw[3 * i + 2];
            img.data[i] = quantize_intensity(lum);
        }
    }
    return img;
}

bool has_png_signature(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFound(path);
    unsigned char sig[8] = {0};
    in.read(reinterpret_cast<char*>(sig), 8);
    static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
    return in.gcount() == 8 && std::equal(sig, sig + 8, png_sig);
}

} // namespace

GrayImage load_image(const std::string& path) {
    if (!std::filesystem::exists(path)) throw FileNotFound(path);
    if (has_png_signature(path)) return load_png(path);
    return load_pgm(path);
}

void save_image(const GrayImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data.data()),
              static_cast<std::streamsize>(img.data.size()));
    if (!out) throw IoError("short write: " + path);
}

} // namespace gpocr
