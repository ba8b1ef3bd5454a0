#include <gtest/gtest.h>

#include <random>
#include <string>

#include "oracles.hpp"
#include <threshkit/pnm.hpp>

using namespace threshkit;

namespace
{

PnmErrorKind error_kind(std::string_view text)
{
    try
    {
        load_pnm(text);
    }
    catch (const PnmError& e)
    {
        return e.kind();
    }
    ADD_FAILURE() << "no error for input: " << text;
    return PnmErrorKind::bad_magic;
}

std::vector<std::uint8_t> body(const std::vector<std::uint8_t>& bytes)
{
    return {bytes.begin() + static_cast<std::ptrdiff_t>(pnm_body_offset(bytes)), bytes.end()};
}

} // namespace

TEST(LoadPnm, AsciiGray)
{
    const auto img = std::get<GrayImage>(load_pnm("P2\n2 2\n255\n0 255 255 0\n"));
    EXPECT_EQ(img, GrayImage(2, 2, std::vector<std::uint8_t>{0, 255, 255, 0}));

    const auto one = std::get<GrayImage>(load_pnm("P2\n1 1\n255\n7\n"));
    EXPECT_EQ(one.width(), 1u);
    EXPECT_EQ(one(0, 0), 7);
}

TEST(LoadPnm, CommentsAreSkipped)
{
    const auto img = std::get<GrayImage>(load_pnm("P2\n# made by hand\n2 # width\n1\n# maxval next\n255\n3 4\n"));
    EXPECT_EQ(img, GrayImage(2, 1, std::vector<std::uint8_t>{3, 4}));
}

TEST(LoadPnm, AsciiColor)
{
    const auto img = std::get<RgbImage>(load_pnm("P3 1 2 255  1 2 3  4 5 6"));
    EXPECT_EQ(img(0, 0), (Rgb{1, 2, 3}));
    EXPECT_EQ(img(0, 1), (Rgb{4, 5, 6}));
}

TEST(LoadPnm, BinaryRasterMayContainWhitespaceBytes)
{
    std::string text = "P5\n3 1\n255\n";
    text += '\n';
    text += ' ';
    text += '#';
    const auto img = std::get<GrayImage>(load_pnm(text));
    EXPECT_EQ(img(0, 0), '\n');
    EXPECT_EQ(img(1, 0), ' ');
    EXPECT_EQ(img(2, 0), '#');
}

TEST(LoadPnm, DistinctErrors)
{
    EXPECT_EQ(error_kind("P2\n2 2\n65535\n0 0 0 0\n"), PnmErrorKind::unsupported_maxval);
    EXPECT_EQ(error_kind("P1\n1 1\n1\n"), PnmErrorKind::bad_magic);
    EXPECT_EQ(error_kind("GIF89a"), PnmErrorKind::bad_magic);
    EXPECT_EQ(error_kind("P2\n2\n"), PnmErrorKind::malformed_header);
    EXPECT_EQ(error_kind("P2\n0 2\n255\n"), PnmErrorKind::zero_dimension);
    EXPECT_EQ(error_kind("P2\n2 2\n255\n1 2 3\n"), PnmErrorKind::truncated_data);
    EXPECT_EQ(error_kind("P5\n2 2\n255\nabc"), PnmErrorKind::truncated_data);
    EXPECT_EQ(error_kind("P2\n1 1\n255\n256\n"), PnmErrorKind::bad_sample);
    EXPECT_EQ(error_kind("P2\n1 1\n255\nx\n"), PnmErrorKind::bad_sample);
}

TEST(SavePnm, BinaryLabelsScaleTo255)
{
    const auto bytes = save_pnm(binary_from_labels(2, 1, {1, 0}));
    EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 2), "P5");
    EXPECT_EQ(body(bytes), (std::vector<std::uint8_t>{255, 0}));
}

TEST(SavePnm, RgbIsP6)
{
    const auto bytes = save_pnm(RgbImage(1, 1, std::vector<Rgb>{{1, 2, 3}}));
    EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 2), "P6");
    EXPECT_EQ(body(bytes), (std::vector<std::uint8_t>{1, 2, 3}));
}

TEST(SavePnm, NoComments)
{
    const auto bytes = save_pnm(GrayImage(1, 1, std::uint8_t{7}));
    EXPECT_EQ(std::string(bytes.begin(), bytes.end()), std::string("P5\n1 1\n255\n\x07"));
    EXPECT_EQ(std::get<GrayImage>(load_pnm(bytes))(0, 0), 7);
}

TEST(PnmProperty, RoundTripIsIdentity)
{
    std::mt19937 rng(2024);
    std::uniform_int_distribution<std::size_t> dim(1, 40);
    for (int trial = 0; trial < 200; ++trial)
    {
        const auto w = dim(rng), h = dim(rng);
        const auto gray = oracle::random_gray(rng, w, h);
        EXPECT_EQ(std::get<GrayImage>(load_pnm(save_pnm(gray))), gray);

        const auto rgb = oracle::random_rgb(rng, w, h);
        EXPECT_EQ(std::get<RgbImage>(load_pnm(save_pnm(rgb))), rgb);

        const auto bin = oracle::random_binary(rng, w, h);
        EXPECT_EQ(as_binary(std::get<GrayImage>(load_pnm(save_pnm(bin)))), bin);
    }
}
