#include <doctest.h>

#include "corpus.hpp"
#include "oracles.hpp"

#include <random>

using namespace labt;

namespace {

Histogram hist_of(std::initializer_list<int> values)
{
    Histogram h;
    for (int v : values)
        h.add(static_cast<std::uint8_t>(v));
    return h;
}

} // namespace

TEST_CASE("Otsu picks the smallest maximizing split")
{
    const auto h = hist_of({10, 10, 200, 200});
    CHECK(oracle::otsu(h.counts) == 11);
    CHECK(select_threshold(Otsu{}, h) == 11);
}

TEST_CASE("Otsu matches the exhaustive rational oracle")
{
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        Histogram h;
        // Mix of dense, sparse and clustered histograms.
        const int distinct = 1 + static_cast<int>(rng() % 12);
        std::vector<int> levels;
        for (int i = 0; i < distinct; ++i)
            levels.push_back(static_cast<int>(rng() % 256));
        const int n = 1 + static_cast<int>(rng() % 300);
        for (int i = 0; i < n; ++i)
            h.add(static_cast<std::uint8_t>(levels[rng() % levels.size()]));
        CHECK(otsu_threshold(h) == oracle::otsu(h.counts));
    }
    // Symmetric two-spike histograms tie across the whole gap.
    CHECK(otsu_threshold(hist_of({0, 255})) == 1);
    CHECK(otsu_threshold(hist_of({0, 0, 128, 255, 255})) == oracle::otsu(hist_of({0, 0, 128, 255, 255}).counts));
}

TEST_CASE("ADCDF splits the cumulative histogram")
{
    CHECK(select_threshold(Adcdf(0.5), hist_of({0, 0, 200, 200})) == 1);
    CHECK(select_threshold(Adcdf(0.75), hist_of({0, 0, 200, 200})) == 201);
    CHECK(select_threshold(Adcdf(0.5), hist_of({10, 250, 255})) == 251);
    CHECK(select_threshold(Adcdf(0.9), hist_of({10, 254, 255})) == 255); // capped
    CHECK_THROWS_AS(Adcdf(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Adcdf(1.0), std::invalid_argument);
}

TEST_CASE("MeanK rounds half away from zero and clamps")
{
    CHECK(mean_k_threshold({100.0, 10.0}, -0.2) == 98);
    CHECK(mean_k_threshold({100.5, 0.0}, 0.0) == 101);
    CHECK(mean_k_threshold({10.0, 10.0}, -5.0) == 0);
    CHECK(mean_k_threshold({250.0, 10.0}, 5.0) == 255);

    const auto h = hist_of({100, 101});
    const auto stats = region_stats(h);
    CHECK(stats.mean == doctest::Approx(100.5));
    CHECK(stats.stddev == doctest::Approx(0.5));
    CHECK(select_threshold(MeanK{0.0}, h) == 101);
}

TEST_CASE("a constant region thresholds at its value")
{
    const auto h = hist_of({128, 128, 128});
    CHECK(select_threshold(Otsu{}, h) == 128);
    CHECK(select_threshold(Adcdf(0.3), h) == 128);
    CHECK(select_threshold(MeanK{-0.2}, h) == 128);
    CHECK(select_threshold(MeanK{3.0}, hist_of({0})) == 0);
}

TEST_CASE("select_threshold rejects an empty region")
{
    CHECK_THROWS_AS(select_threshold(Otsu{}, Histogram{}), std::invalid_argument);
    CHECK_THROWS_AS(region_stats(Histogram{}), std::invalid_argument);
}

TEST_CASE("select_threshold stays in [0, 255]")
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto img = testing::random_image(4, 4, rng());
        const auto h = histogram(img);
        for (const ThresholdMethod& m : {ThresholdMethod{Otsu{}}, ThresholdMethod{Adcdf(0.2)},
                                         ThresholdMethod{MeanK{4.0}}, ThresholdMethod{MeanK{-4.0}}}) {
            const int t = select_threshold(m, h);
            CHECK(t >= 0);
            CHECK(t <= 255);
        }
    }
}

TEST_CASE("binarize_global uses p >= t as foreground")
{
    const GrayImage img(2, 1, std::vector<std::uint8_t>{0, 255});
    const auto out = binarize_global(img, 128);
    CHECK(out(0, 0) == Label::background);
    CHECK(out(0, 1) == Label::foreground);

    const auto all = binarize_global(testing::random_image(9, 9, 1), 0);
    for (auto l : all.pixels())
        CHECK(l == Label::foreground);

    CHECK(binarize_global(GrayImage(1, 1, 100), 100)(0, 0) == Label::foreground);
    CHECK_THROWS_AS(binarize_global(img, 256), std::invalid_argument);

    // Monotone: raising t never turns background into foreground.
    const auto r = testing::random_image(16, 16, 8);
    for (int t = 0; t < 255; ++t) {
        const auto lo = binarize_global(r, t);
        const auto hi = binarize_global(r, t + 1);
        for (std::size_t i = 0; i < r.size(); ++i)
            if (lo.pixels()[i] == Label::background)
                CHECK(hi.pixels()[i] == Label::background);
    }
}

TEST_CASE("Niblack")
{
    SUBCASE("constant image is all foreground")
    {
        const auto out = niblack_binarize(GrayImage(9, 7, 100), {15, -0.2});
        for (auto l : out.pixels())
            CHECK(l == Label::foreground);
    }

    SUBCASE("k = 0 compares against the clipped local mean")
    {
        const auto img = testing::random_image(12, 10, 17);
        const auto out = niblack_binarize(img, {3, 0.0});
        for (int r = 0; r < img.height(); ++r) {
            for (int c = 0; c < img.width(); ++c) {
                long sum = 0;
                long n = 0;
                for (int y = std::max(0, r - 1); y <= std::min(img.height() - 1, r + 1); ++y)
                    for (int x = std::max(0, c - 1); x <= std::min(img.width() - 1, c + 1); ++x) {
                        sum += img(y, x);
                        ++n;
                    }
                // p >= sum / n  <=>  p * n >= sum
                const bool fg = static_cast<long>(img(r, c)) * n >= sum;
                CHECK((out(r, c) == Label::foreground) == fg);
            }
        }
    }

    SUBCASE("integral images match the naive window loop")
    {
        for (std::uint32_t seed = 0; seed < 10; ++seed) {
            const auto img = testing::random_image(32, 32, seed);
            for (int window : {3, 7, 15})
                CHECK(niblack_binarize(img, {window, -0.2}) == oracle::niblack(img, window, -0.2));
        }
    }

    SUBCASE("window must be odd and at least 3")
    {
        const GrayImage img(4, 4, 1);
        CHECK_THROWS_AS(niblack_binarize(img, {4, -0.2}), std::invalid_argument);
        CHECK_THROWS_AS(niblack_binarize(img, {1, -0.2}), std::invalid_argument);
    }
}
