#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include <threshkit/adaptive.hpp>
#include <threshkit/global_threshold.hpp>
#include <threshkit/metrics.hpp>
#include <threshkit/synth.hpp>

using namespace threshkit;

namespace
{

GrayImage reversed(const GrayImage& img)
{
    std::vector<std::uint8_t> px(img.pixels().rbegin(), img.pixels().rend());
    return GrayImage(img.width(), img.height(), std::move(px));
}

BinaryImage reversed(const BinaryImage& img)
{
    std::vector<std::uint8_t> px(img.pixels().rbegin(), img.pixels().rend());
    return BinaryImage(img.width(), img.height(), std::move(px));
}

} // namespace

TEST(MovingAverage, MatchesSequentialRecurrence)
{
    std::mt19937 rng(31);
    const auto img = oracle::random_gray(rng, 19, 13);
    for (std::size_t span : {1u, 2u, 8u, 40u})
    {
        const auto got = moving_average_threshold(img, span, 15.0);
        double g = 127.0;
        for (std::size_t y = 0; y < img.height(); ++y)
            for (std::size_t x = 0; x < img.width(); ++x)
            {
                const double p = img(x, y);
                g = g * (1.0 - 1.0 / static_cast<double>(span)) + p / static_cast<double>(span);
                const std::uint8_t want = p < g * 0.85 ? 0 : 1;
                ASSERT_EQ(got(x, y), want) << "span " << span << " at " << x << "," << y;
            }
    }
}

TEST(MovingAverage, AllZeroImageDecaysToForeground)
{
    const GrayImage img(64, 32, std::uint8_t{0});
    const auto out = moving_average_threshold(img, 2, 15.0);
    const auto px = out.pixels();
    EXPECT_EQ(px.front(), 0);
    EXPECT_EQ(px.back(), 1);
    // once the average underflows to zero every later pixel is foreground
    EXPECT_TRUE(std::is_sorted(px.begin(), px.end()));
}

TEST(MovingAverage, ConstantImageSteadyState)
{
    // g starts at 127, so the first few pixels sit more than 15% under it;
    // once g has decayed to ~90 every pixel is foreground.
    const GrayImage img(50, 4, std::uint8_t{90});
    const auto out = moving_average_threshold(img, 4, 15.0);
    EXPECT_EQ(out(0, 0), 0);
    EXPECT_TRUE(std::is_sorted(out.pixels().begin(), out.pixels().end()));
    EXPECT_EQ(out(49, 3), 1);
    EXPECT_GT(foreground_ratio(out), 0.95);
}

TEST(MovingAverage, DependsOnScanOrder)
{
    std::vector<std::uint8_t> px(40, 50);
    std::fill(px.begin() + 20, px.end(), 200);
    const GrayImage img(40, 1, px);
    const auto forward = moving_average_threshold(img, 8, 15.0);
    const auto backward = reversed(moving_average_threshold(reversed(img), 8, 15.0));
    EXPECT_NE(forward, backward);
}

TEST(MovingAverage, Validation)
{
    const GrayImage img(4, 4);
    EXPECT_THROW(moving_average_threshold(img, 0, 15.0), std::invalid_argument);
    EXPECT_THROW(moving_average_threshold(img, 3, 100.0), std::invalid_argument);
    EXPECT_THROW(moving_average_threshold(img, 3, -1.0), std::invalid_argument);
}

TEST(AdaptiveParams, Validation)
{
    EXPECT_THROW(AdaptiveParams(4, 15.0), std::invalid_argument);
    EXPECT_THROW(AdaptiveParams(0, 15.0), std::invalid_argument);
    EXPECT_THROW(AdaptiveParams(3, 100.0), std::invalid_argument);
    EXPECT_NO_THROW(AdaptiveParams(1, 0.0));
}

TEST(AdaptiveParams, Defaults)
{
    EXPECT_EQ(AdaptiveParams::default_window(64), 7u);
    EXPECT_EQ(AdaptiveParams::default_window(10), 3u);
    EXPECT_EQ(AdaptiveParams::default_window(1), 3u);
    EXPECT_EQ(AdaptiveParams::default_window(200), 25u);
    EXPECT_EQ(AdaptiveParams::default_window(72), 9u);
    EXPECT_DOUBLE_EQ(AdaptiveParams::defaults_for(GrayImage(64, 64)).percent(), 15.0);
}

TEST(Bradley, ConstantImageIsForeground)
{
    const GrayImage img(12, 9, std::uint8_t{120});
    for (double t : {1.0, 15.0, 50.0})
        EXPECT_EQ(bradley_threshold(img, {5, t}), BinaryImage(12, 9, std::uint8_t{1}));
}

TEST(Bradley, AllZeroImageIsBackground)
{
    const GrayImage img(12, 9, std::uint8_t{0});
    EXPECT_EQ(bradley_threshold(img, {5, 15.0}), BinaryImage(12, 9, std::uint8_t{0}));
}

TEST(Bradley, MatchesNaiveOracle)
{
    std::mt19937 rng(32);
    std::uniform_int_distribution<std::size_t> dim(1, 64);
    for (int trial = 0; trial < 12; ++trial)
    {
        const auto img = oracle::random_gray(rng, dim(rng), dim(rng));
        for (long side : {1, 3, 5, 9, 31})
            for (int t : {0, 15, 50})
                ASSERT_EQ(bradley_threshold(img, {static_cast<std::size_t>(side), static_cast<double>(t)}),
                          oracle::bradley(img, side, t))
                    << img.width() << "x" << img.height() << " side " << side << " t " << t;
    }
}

TEST(Bradley, WholeImageWindowAtZeroPercent)
{
    // With one window spanning everything, pixel * n <= total labels 0, so
    // the cut is strictly above the mean: pixels equal to the mean are background.
    std::mt19937 rng(33);
    for (int trial = 0; trial < 20; ++trial)
    {
        auto img = oracle::random_gray(rng, 9, 7);
        if (trial % 2 == 0)
            img(0, 0) = 100, img(1, 0) = 100; // nudge toward exact-mean ties
        const double mean = global_mean(img);
        const auto out = bradley_threshold(img, {2 * 9 + 1, 0.0});
        for (std::size_t y = 0; y < img.height(); ++y)
            for (std::size_t x = 0; x < img.width(); ++x)
                EXPECT_EQ(out(x, y), img(x, y) > mean ? 1 : 0);
    }

    // Exact-mean pixels differ from threshold_fixed, which keeps them.
    const GrayImage tie(2, 2, std::vector<std::uint8_t>{0, 100, 50, 50});
    EXPECT_EQ(bradley_threshold(tie, {3, 0.0}), binary_from_labels(2, 2, {0, 1, 0, 0}));
    EXPECT_EQ(threshold_fixed(tie, 50), binary_from_labels(2, 2, {0, 1, 1, 1}));
}

TEST(Bradley, RowOrderIndependent)
{
    std::mt19937 rng(34);
    const auto img = oracle::random_gray(rng, 41, 37);
    const AdaptiveParams params(9, 15.0);
    const auto reference = bradley_threshold(img, params);

    const IntegralImage itg(img);
    std::vector<std::size_t> rows(img.height());
    std::iota(rows.begin(), rows.end(), 0);
    for (int perm = 0; perm < 5; ++perm)
    {
        std::shuffle(rows.begin(), rows.end(), rng);
        BinaryImage out(img.width(), img.height());
        for (auto y : rows)
            for (std::size_t x = img.width(); x-- > 0;)
                out(x, y) = bradley_pixel(img, itg, x, y, params);
        EXPECT_EQ(out, reference);
    }
}

TEST(Bradley, GradientCheckerboardAwayFromCellBorders)
{
    const std::size_t cell = 8;
    const auto scene = gen_gradient_checkerboard({64, 64, cell, 0, 200, 100});
    const auto out = bradley_threshold(scene.image, {2 * cell + 1, 15.0});
    ASSERT_EQ(out, oracle::bradley(scene.image, 2 * cell + 1, 15));

    std::size_t total = 0, correct = 0;
    for (std::size_t y = 0; y < 64; ++y)
        for (std::size_t x = 0; x < 64; ++x)
        {
            const auto cx = x % cell, cy = y % cell;
            if (cx == 0 || cx == cell - 1 || cy == 0 || cy == cell - 1)
                continue;
            ++total;
            correct += out(x, y) == scene.truth(x, y);
        }
    EXPECT_GE(static_cast<double>(correct) / static_cast<double>(total), 0.99);
}
