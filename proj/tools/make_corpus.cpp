// Generates the bundled synthetic benchmark corpus: large-print text lines
// rendered from a built-in 5x7 bitmap font, plus transcripts and a manifest.
#include "gpocr/error.hpp"
#include "gpocr/image.hpp"
#include "gpocr/rng.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace {

using namespace gpocr;

struct Glyph {
    char c;
    const char* rows[7];
};

const Glyph kFont[] = {
    {'A', {" ### ", "#   #", "#   #", "#####", "#   #", "#   #", "#   #"}},
    {'B', {"#### ", "#   #", "#   #", "#### ", "#   #", "#   #", "#### "}},
    {'C', {" ### ", "#   #", "#    ", "#    ", "#    ", "#   #", " ### "}},
    {'D', {"#### ", "#   #", "#   #", "#   #", "#   #", "#   #", "#### "}},
    {'E', {"#####", "#    ", "#    ", "#### ", "#    ", "#    ", "#####"}},
    {'F', {"#####", "#    ", "#    ", "#### ", "#    ", "#    ", "#    "}},
    {'G', {" ### ", "#   #", "#    ", "# ###", "#   #", "#   #", " ### "}},
    {'H', {"#   #", "#   #", "#   #", "#####", "#   #", "#   #", "#   #"}},
    {'I', {" ### ", "  #  ", "  #  ", "  #  ", "  #  ", "  #  ", " ### "}},
    {'J', {"  ###", "   # ", "   # ", "   # ", "   # ", "#  # ", " ##  "}},
    {'K', {"#   #", "#  # ", "# #  ", "##   ", "# #  ", "#  # ", "#   #"}},
    {'L', {"#    ", "#    ", "#    ", "#    ", "#    ", "#    ", "#####"}},
    {'M', {"#   #", "## ##", "# # #", "# # #", "#   #", "#   #", "#   #"}},
    {'N', {"#   #", "##  #", "# # #", "#  ##", "#   #", "#   #", "#   #"}},
    {'O', {" ### ", "#   #", "#   #", "#   #", "#   #", "#   #", " ### "}},
    {'P', {"#### ", "#   #", "#   #", "#### ", "#    ", "#    ", "#    "}},
    {'Q', {" ### ", "#   #", "#   #", "#   #", "# # #", "#  # ", " ## #"}},
    {'R', {"#### ", "#   #", "#   #", "#### ", "# #  ", "#  # ", "#   #"}},
    {'S', {" ####", "#    ", "#    ", " ### ", "    #", "    #", "#### "}},
    {'T', {"#####", "  #  ", "  #  ", "  #  ", "  #  ", "  #  ", "  #  "}},
    {'U', {"#   #", "#   #", "#   #", "#   #", "#   #", "#   #", " ### "}},
    {'V', {"#   #", "#   #", "#   #", "#   #", "#   #", " # # ", "  #  "}},
    {'W', {"#   #", "#   #", "#   #", "# # #", "# # #", "## ##", "#   #"}},
    {'X', {"#   #", "#   #", " # # ", "  #  ", " # # ", "#   #", "#   #"}},
    {'Y', {"#   #", "#   #", " # # ", "  #  ", "  #  ", "  #  ", "  #  "}},
    {'Z', {"#####", "    #", "   # ", "  #  ", " #   ", "#    ", "#####"}},
    {'0', {" ### ", "#   #", "#  ##", "# # #", "##  #", "#   #", " ### "}},
    {'1', {"  #  ", " ##  ", "  #  ", "  #  ", "  #  ", "  #  ", " ### "}},
    {'2', {" ### ", "#   #", "    #", "  ## ", " #   ", "#    ", "#####"}},
    {'3', {"#####", "    #", "   # ", "  ## ", "    #", "#   #", " ### "}},
    {'4', {"   # ", "  ## ", " # # ", "#  # ", "#####", "   # ", "   # "}},
    {'5', {"#####", "#    ", "#### ", "    #", "    #", "#   #", " ### "}},
    {'6', {"  ## ", " #   ", "#    ", "#### ", "#   #", "#   #", " ### "}},
    {'7', {"#####", "    #", "   # ", "  #  ", " #   ", " #   ", " #   "}},
    {'8', {" ### ", "#   #", "#   #", " ### ", "#   #", "#   #", " ### "}},
    {'9', {" ### ", "#   #", "#   #", " ####", "    #", "   # ", " ##  "}},
    {'.', {"     ", "     ", "     ", "     ", "     ", "  ## ", "  ## "}},
    {',', {"     ", "     ", "     ", "     ", "  ## ", "  ## ", " #   "}},
    {' ', {"     ", "     ", "     ", "     ", "     ", "     ", "     "}},
};

const Glyph& find_glyph(char c) {
    for (const auto& g : kFont)
        if (g.c == c) return g;
    throw Error(std::string("no glyph for character '") + c + "'");
}

// Geometry chosen so that, after 4x degradation and reconstruction, the
// bilateral output stays near-binary for the whole bundled set.
const int kScale = 12;
const int kMargin = 150;
const int kLineGap = 200;
const int kJitter = 8; // per-line offset in [0, kJitter)
const int kAdvance = 6 * kScale;
const int kGlyphH = 7 * kScale;

const std::vector<std::vector<std::string>> kSentences = {
    {"THE QUICK BROWN FOX", "JUMPS OVER THE LAZY", "DOG BY THE OLD GATE."},
    {"PACK MY BOX WITH", "FIVE DOZEN LIQUOR", "JUGS FOR THE TRIP."},
    {"HOW VEXINGLY QUICK", "DAFT ZEBRAS JUMP,", "THEN REST AT NOON."},
    {"SPHINX OF BLACK", "QUARTZ, JUDGE MY", "VOW TO THE CROWD."},
    {"THE FIVE BOXING", "WIZARDS JUMP OVER", "THE QUIET FENCE."},
    {"JACKDAWS LOVE MY", "BIG SPHINX MADE", "OF GRAY QUARTZ."},
    {"A WIZARD MAY FIX", "THE JUNK BOX FOR", "THE QUIET VICAR."},
    {"BRIGHT VIXENS JUMP", "WHILE THE DOZY FOWL", "QUACK AT DAWN."},
    {"QUICK ZEPHYRS BLOW,", "VEXING THE DAFT", "JUMPY COW AGAIN."},
    {"FEW BLACK TAXIS", "DRIVE UP MAJOR", "ROADS ON QUIET DAYS."},
};

int pad8(int v) { return v + ((8 - v % 8) % 8); }

GrayImage render(const std::vector<std::string>& lines, Rng& rng) {
    std::size_t wmax = 0;
    for (const auto& s : lines) wmax = std::max(wmax, s.size());
    const int w = pad8(2 * kMargin + static_cast<int>(wmax) * kAdvance + kJitter);
    const int h = pad8(2 * kMargin + static_cast<int>(lines.size()) * kGlyphH +
                       (static_cast<int>(lines.size()) - 1) * kLineGap + kJitter);
    GrayImage img(w, h, 255);

    int y = kMargin;
    for (const auto& line : lines) {
        const int dx = static_cast<int>(rng.next_u64() % kJitter);
        const int dy = static_cast<int>(rng.next_u64() % kJitter);
        for (std::size_t ci = 0; ci < line.size(); ++ci) {
            const Glyph& g = find_glyph(line[ci]);
            const int x0 = kMargin + static_cast<int>(ci) * kAdvance + dx;
            for (int r = 0; r < 7; ++r)
                for (int c = 0; c < 5; ++c) {
                    if (g.rows[r][c] != '#') continue;
                    for (int yy = 0; yy < kScale; ++yy)
                        for (int xx = 0; xx < kScale; ++xx)
                            img.at(y + dy + r * kScale + yy, x0 + c * kScale + xx) = 0;
                }
        }
        y += kGlyphH + kLineGap;
    }
    return img;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generate the bundled synthetic text corpus"};
    std::string out_dir;
    std::uint64_t seed = 1001;
    app.add_option("--out", out_dir, "output directory")->required();
    app.add_option("--seed", seed, "layout jitter seed")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    try {
        std::filesystem::create_directories(out_dir);
        Rng rng(seed);
        std::ofstream manifest(out_dir + "/manifest.tsv");
        if (!manifest) throw IoError("cannot write manifest");
        for (std::size_t i = 0; i < kSentences.size(); ++i) {
            char name[16];
            std::snprintf(name, sizeof name, "e%03zu", i);
            const GrayImage img = render(kSentences[i], rng);
            save_image(img, out_dir + "/" + name + ".pgm");
            std::ofstream txt(out_dir + "/" + name + ".txt");
            for (const auto& line : kSentences[i]) txt << line << "\n";
            manifest << name << ".pgm\t" << name << ".txt\n";
        }
        std::fprintf(stderr, "wrote %zu entries to %s\n", kSentences.size(), out_dir.c_str());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "make_corpus: %s\n", e.what());
        return 1;
    }
    return 0;
}
