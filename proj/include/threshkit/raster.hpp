#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace threshkit
{

struct Rgb
{
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct GrayTag {};
struct RgbTag {};
struct BinaryTag {};

/// Rectangular row-major raster with origin at the top-left corner.
/// x is the column index, y the row index. Width and height are always
/// positive. The Tag parameter keeps gray intensities and binary labels
/// apart even though both are stored as bytes.
template <typename Pixel, typename Tag>
class Image
{
public:
    using pixel_type = Pixel;

    Image(std::size_t width, std::size_t height, Pixel fill = Pixel{})
        : m_width(width), m_height(height)
    {
        check_dims(width, height);
        m_pixels.assign(width * height, fill);
    }

    Image(std::size_t width, std::size_t height, std::vector<Pixel> pixels)
        : m_width(width), m_height(height), m_pixels(std::move(pixels))
    {
        check_dims(width, height);
        if (m_pixels.size() != width * height)
        {
            throw std::invalid_argument("pixel count does not match " + std::to_string(width) + "x" +
                                        std::to_string(height));
        }
    }

    std::size_t width() const noexcept { return m_width; }
    std::size_t height() const noexcept { return m_height; }
    std::size_t size() const noexcept { return m_pixels.size(); }

    bool contains(std::ptrdiff_t x, std::ptrdiff_t y) const noexcept
    {
        return x >= 0 && y >= 0 && static_cast<std::size_t>(x) < m_width &&
               static_cast<std::size_t>(y) < m_height;
    }

    const Pixel& operator()(std::size_t x, std::size_t y) const noexcept { return m_pixels[y * m_width + x]; }
    Pixel& operator()(std::size_t x, std::size_t y) noexcept { return m_pixels[y * m_width + x]; }

    std::span<const Pixel> row(std::size_t y) const noexcept
    {
        return std::span<const Pixel>(m_pixels).subspan(y * m_width, m_width);
    }
    std::span<Pixel> row(std::size_t y) noexcept { return std::span<Pixel>(m_pixels).subspan(y * m_width, m_width); }

    std::span<const Pixel> pixels() const noexcept { return m_pixels; }
    std::span<Pixel> pixels() noexcept { return m_pixels; }

    friend bool operator==(const Image&, const Image&) = default;

private:
    static void check_dims(std::size_t width, std::size_t height)
    {
        if (width == 0 || height == 0)
        {
            throw std::invalid_argument("image dimensions must be positive");
        }
    }

    std::size_t m_width;
    std::size_t m_height;
    std::vector<Pixel> m_pixels;
};

using GrayImage = Image<std::uint8_t, GrayTag>;
using RgbImage = Image<Rgb, RgbTag>;

/// Labels are 0 (background) or 1 (foreground). Anything else written
/// through the mutable accessors breaks the invariant; use binary_from_labels()
/// when the source is untrusted.
using BinaryImage = Image<std::uint8_t, BinaryTag>;

inline BinaryImage binary_from_labels(std::size_t width, std::size_t height, std::vector<std::uint8_t> labels)
{
    for (auto v : labels)
    {
        if (v > 1)
        {
            throw std::invalid_argument("binary label outside {0,1}");
        }
    }
    return BinaryImage(width, height, std::move(labels));
}

/// BT.601 luma, rounded to nearest.
inline std::uint8_t luma(Rgb c) noexcept
{
    const double y = 0.299 * c.r + 0.587 * c.g + 0.114 * c.b;
    return static_cast<std::uint8_t>(std::clamp(std::lround(y), 0L, 255L));
}

inline GrayImage rgb_to_gray(const RgbImage& img)
{
    GrayImage out(img.width(), img.height());
    std::ranges::transform(img.pixels(), out.pixels().begin(), luma);
    return out;
}

inline RgbImage gray_to_rgb(const GrayImage& img)
{
    RgbImage out(img.width(), img.height());
    std::ranges::transform(img.pixels(), out.pixels().begin(), [](std::uint8_t v) { return Rgb{v, v, v}; });
    return out;
}

} // namespace threshkit
