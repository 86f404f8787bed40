#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gpocr/error.hpp"
#include "gpocr/resample.hpp"
#include "gpocr/rng.hpp"
#include "oracles.hpp"

#include <cmath>
#include <cstdlib>

using namespace gpocr;

namespace {

GrayImage random_image(int w, int h, std::uint64_t seed) {
    Rng rng(seed);
    GrayImage img(w, h);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(rng.next_u64() & 0xFF);
    return img;
}

} // namespace

TEST_CASE("bicubic reproduces constants") {
    for (int c : {0, 37, 255}) {
        const GrayImage img(5, 4, static_cast<std::uint8_t>(c));
        for (int r : {2, 4}) {
            const GrayImage out = bicubic_upsample(img, r);
            CHECK(out.width == 5 * r);
            CHECK(out.height == 4 * r);
            bool all = true;
            for (auto v : out.data) all = all && v == c;
            CHECK(all);
        }
    }
}

TEST_CASE("bicubic preserves a linear ramp in the interior") {
    GrayImage img(32, 8);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 32; ++x) img.at(y, x) = static_cast<std::uint8_t>(4 * x);
    const int r = 4;
    const GrayImage out = bicubic_upsample(img, r);
    // skip 2 source columns of border on each side
    for (int y = 0; y < out.height; ++y)
        for (int x = 2 * r; x < out.width - 2 * r; ++x) {
            const double sx = (x + 0.5) / r - 0.5;
            const double expect = 4.0 * sx;
            CHECK(std::abs(out.at(y, x) - expect) <= 1.0);
        }
}

TEST_CASE("bicubic matches the direct-evaluation oracle") {
    for (std::uint64_t seed = 21; seed <= 24; ++seed) {
        const GrayImage img = random_image(8, 8, seed);
        const GrayImage got = bicubic_upsample(img, 2);
        const GrayImage ref = oracles::bicubic_ref(img, 2);
        REQUIRE(got.width == ref.width);
        int worst = 0;
        for (std::size_t i = 0; i < got.data.size(); ++i)
            worst = std::max(worst, std::abs(int(got.data[i]) - int(ref.data[i])));
        CHECK(worst <= 1);
    }
}

TEST_CASE("bicubic ratio range") {
    const GrayImage img = random_image(6, 6, 1);
    CHECK_THROWS_AS(bicubic_upsample(img, 1), Error);
    CHECK_THROWS_AS(bicubic_upsample(img, 9), Error);
}

TEST_CASE("nearest block structure") {
    GrayImage img(2, 1);
    img.data = {1, 2};
    const GrayImage out = nearest_upsample(img, 2);
    REQUIRE(out.width == 4);
    REQUIRE(out.height == 2);
    CHECK(out.data == std::vector<std::uint8_t>{1, 1, 2, 2, 1, 1, 2, 2});

    const GrayImage rnd = random_image(5, 7, 2);
    CHECK(nearest_upsample(rnd, 1) == rnd);
    const GrayImage up = nearest_upsample(rnd, 3);
    for (int y = 0; y < up.height; ++y)
        for (int x = 0; x < up.width; ++x) CHECK(up.at(y, x) == rnd.at(y / 3, x / 3));
}

TEST_CASE("box_downsample") {
    SUBCASE("constant block") {
        const GrayImage img(4, 4, 100);
        const GrayImage out = box_downsample(img, 4);
        REQUIRE(out.width == 1);
        REQUIRE(out.height == 1);
        CHECK(out.at(0, 0) == 100);
    }
    SUBCASE("mean 127.5 rounds half-up to 128") {
        GrayImage img(2, 2);
        img.data = {0, 255, 255, 0};
        const GrayImage out = box_downsample(img, 2);
        REQUIRE(out.width == 1);
        CHECK(out.at(0, 0) == 128);
    }
    SUBCASE("trailing partial blocks are dropped") {
        GrayImage img(3, 3, 0);
        img.at(0, 0) = 40;
        img.at(0, 1) = 80;
        img.at(1, 0) = 120;
        img.at(1, 1) = 160;
        img.at(2, 2) = 255; // outside the only full block
        const GrayImage out = box_downsample(img, 2);
        REQUIRE(out.width == 1);
        REQUIRE(out.height == 1);
        CHECK(out.at(0, 0) == 100);
    }
    SUBCASE("too small") {
        const GrayImage img(3, 3, 0);
        CHECK_THROWS_AS(box_downsample(img, 4), ImageTooSmall);
    }
}

TEST_CASE("box after nearest is the identity") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const GrayImage img = random_image(4 + int(seed % 5), 3 + int(seed % 7), seed + 100);
        const int r = 2 + int(seed % 4);
        CHECK(box_downsample(nearest_upsample(img, r), r) == img);
    }
}
