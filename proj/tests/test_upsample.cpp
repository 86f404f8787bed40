#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gpocr/error.hpp"
#include "gpocr/rng.hpp"
#include "gpocr/upsample.hpp"
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

TEST_CASE("constant images reproduce exactly") {
    for (int ratio : {2, 4}) {
        for (int c : {0, 1, 127, 200, 254, 255}) {
            GrayImage img(6, 5, static_cast<std::uint8_t>(c));
            UpsampleConfig cfg;
            cfg.ratio = ratio;
            const GrayImage out = gp_upsample(img, cfg);
            CHECK(out.width == 6 * ratio);
            CHECK(out.height == 5 * ratio);
            bool all = true;
            for (auto v : out.data) all = all && v == c;
            CHECK(all);
        }
    }
}

TEST_CASE("1x1 image replicates under border clamp") {
    GrayImage img(1, 1, 93);
    UpsampleConfig cfg;
    cfg.ratio = 2;
    const GrayImage out = gp_upsample(img, cfg);
    REQUIRE(out.width == 2);
    REQUIRE(out.height == 2);
    for (auto v : out.data) CHECK(v == 93);
}

TEST_CASE("dimension contract") {
    const GrayImage img = random_image(7, 3, 1);
    for (int ratio = 2; ratio <= 8; ++ratio) {
        UpsampleConfig cfg;
        cfg.ratio = ratio;
        const GrayImage out = gp_upsample(img, cfg);
        CHECK(out.width == 7 * ratio);
        CHECK(out.height == 3 * ratio);
    }
}

TEST_CASE("matches brute-force per-pixel oracle on random 8x8 images") {
    UpsampleConfig cfg;
    cfg.ratio = 2;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const GrayImage img = random_image(8, 8, seed);
        const GrayImage got = gp_upsample(img, cfg);
        const GrayImage ref = oracles::gp_upsample_ref(img, 2, cfg.kernel.ell);
        REQUIRE(got.width == ref.width);
        REQUIRE(got.height == ref.height);
        int worst = 0;
        for (std::size_t i = 0; i < got.data.size(); ++i)
            worst = std::max(worst, std::abs(int(got.data[i]) - int(ref.data[i])));
        CHECK(worst <= 1);
    }
}

TEST_CASE("compute_window_mle") {
    const GpWeights w = precompute_weights(4, KernelConfig{});

    SUBCASE("constant window returns the constant") {
        double f[25];
        for (double c : {0.0, 17.0, 255.0}) {
            for (auto& v : f) v = c;
            CHECK(compute_window_mle(f, w) == doctest::Approx(c).epsilon(1e-12));
        }
    }
    SUBCASE("one-hot window weights the center positively") {
        // the normalized weights sum to 1 but individual entries may leave
        // [0,1], so the mean is not confined to the data range
        double f[25] = {0};
        f[12] = 255.0;
        const oracles::WindowPredictor pred(KernelConfig{}.ell);
        const double m = compute_window_mle(f, w);
        CHECK(m > 0.0);
        CHECK(m == doctest::Approx(pred.mle_mean(f)).epsilon(1e-10));
    }
    SUBCASE("random windows match the dense-inverse oracle") {
        const oracles::WindowPredictor pred(KernelConfig{}.ell);
        Rng rng(99);
        for (int t = 0; t < 50; ++t) {
            double f[25];
            for (auto& v : f) v = rng.uniform01() * 255.0;
            CHECK(compute_window_mle(f, w) == doctest::Approx(pred.mle_mean(f)).epsilon(1e-8));
        }
    }
}

TEST_CASE("constant reproduction through the full interpolation formula") {
    const GpWeights w = precompute_weights(4, KernelConfig{});
    double f[25];
    for (auto& v : f) v = 201.0;
    const double f0 = compute_window_mle(f, w);
    for (const auto& wv : w.interp_weights) {
        double acc = f0;
        for (int m = 0; m < 25; ++m) acc += wv(m) * (f[m] - f0);
        CHECK(std::abs(acc - 201.0) <= 1e-9);
    }
}

TEST_CASE("output range stays in bounds near sharp edges") {
    GrayImage img(8, 8, 0);
    for (int y = 0; y < 8; ++y)
        for (int x = 4; x < 8; ++x) img.at(y, x) = 255;
    UpsampleConfig cfg;
    cfg.ratio = 4;
    const GrayImage out = gp_upsample(img, cfg);
    for (auto v : out.data) {
        CHECK(v >= 0);
        CHECK(v <= 255);
    }
}

TEST_CASE("content locality") {
    const GrayImage base = random_image(12, 12, 3);
    GrayImage poked = base;
    poked.at(6, 6) = static_cast<std::uint8_t>(base.at(6, 6) ^ 0x80);

    UpsampleConfig cfg;
    cfg.ratio = 2;
    const GrayImage a = gp_upsample(base, cfg);
    const GrayImage b = gp_upsample(poked, cfg);
    // windows containing (6,6) are centers (4..8, 4..8); affected fine pixels
    // lie in rows/cols [8, 18) at ratio 2
    for (int y = 0; y < a.height; ++y)
        for (int x = 0; x < a.width; ++x) {
            const bool may_change = y >= 8 && y < 18 && x >= 8 && x < 18;
            if (!may_change) CHECK(a.at(y, x) == b.at(y, x));
        }
}

TEST_CASE("determinism") {
    const GrayImage img = random_image(9, 9, 8);
    UpsampleConfig cfg;
    cfg.ratio = 3;
    CHECK(gp_upsample(img, cfg) == gp_upsample(img, cfg));
}
