#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <threshkit/raster.hpp>

namespace threshkit
{

/// Summed-area table over a grayscale image. Entry (x, y) holds the sum of
/// every source pixel (x', y') with x' <= x and y' <= y. Sums are 64-bit, so
/// any image with fewer than 2^64 / 255 pixels is representable.
class IntegralImage
{
public:
    using sum_type = std::uint64_t;

    explicit IntegralImage(const GrayImage& img) : m_width(img.width()), m_height(img.height())
    {
        if (m_width * m_height > std::numeric_limits<sum_type>::max() / 255)
        {
            throw std::length_error("image too large for 64-bit integral sums");
        }
        m_sums.resize(m_width * m_height);

        // I(x,y) = f(x,y) + I(x-1,y) + I(x,y-1) - I(x-1,y-1), out-of-range terms are 0.
        // Carried as a running row sum to avoid the subtraction.
        for (std::size_t y = 0; y < m_height; ++y)
        {
            const auto src = img.row(y);
            sum_type row_sum = 0;
            for (std::size_t x = 0; x < m_width; ++x)
            {
                row_sum += src[x];
                m_sums[y * m_width + x] = row_sum + (y > 0 ? m_sums[(y - 1) * m_width + x] : 0);
            }
        }
    }

    std::size_t width() const noexcept { return m_width; }
    std::size_t height() const noexcept { return m_height; }

    sum_type operator()(std::size_t x, std::size_t y) const noexcept { return m_sums[y * m_width + x]; }

    std::span<const sum_type> row(std::size_t y) const noexcept
    {
        return std::span<const sum_type>(m_sums).subspan(y * m_width, m_width);
    }

    sum_type total() const noexcept { return m_sums.back(); }

    /// Sum over the inclusive rectangle [x1, x2] x [y1, y2].
    sum_type rect_sum(std::size_t x1, std::size_t y1, std::size_t x2, std::size_t y2) const
    {
        if (x1 > x2 || y1 > y2 || x2 >= m_width || y2 >= m_height)
        {
            throw std::out_of_range("rect_sum: invalid rectangle (" + std::to_string(x1) + "," + std::to_string(y1) +
                                    ")-(" + std::to_string(x2) + "," + std::to_string(y2) + ")");
        }
        return unchecked_rect_sum(x1, y1, x2, y2);
    }

    sum_type unchecked_rect_sum(std::size_t x1, std::size_t y1, std::size_t x2, std::size_t y2) const noexcept
    {
        sum_type s = (*this)(x2, y2);
        if (y1 > 0)
        {
            s -= (*this)(x2, y1 - 1);
        }
        if (x1 > 0)
        {
            s -= (*this)(x1 - 1, y2);
        }
        if (x1 > 0 && y1 > 0)
        {
            s += (*this)(x1 - 1, y1 - 1);
        }
        return s;
    }

private:
    std::size_t m_width;
    std::size_t m_height;
    std::vector<sum_type> m_sums;
};

inline IntegralImage build_integral(const GrayImage& img)
{
    return IntegralImage(img);
}

/// Inclusive window bounds after intersecting with the image.
struct WindowRect
{
    std::size_t x1, y1, x2, y2;

    std::size_t count() const noexcept { return (x2 - x1 + 1) * (y2 - y1 + 1); }
};

inline WindowRect clamped_window(std::size_t width, std::size_t height, std::size_t cx, std::size_t cy,
                                 std::size_t side) noexcept
{
    const std::size_t r = side / 2;
    return WindowRect{
        cx > r ? cx - r : 0,
        cy > r ? cy - r : 0,
        std::min(cx + r, width - 1),
        std::min(cy + r, height - 1),
    };
}

struct WindowSum
{
    IntegralImage::sum_type sum = 0;
    std::size_t count = 0;

    double mean() const noexcept { return static_cast<double>(sum) / static_cast<double>(count); }
};

/// Sum and in-bounds pixel count of the side x side window centred on
/// (cx, cy), shrunk at the image border.
inline WindowSum clamped_window_sum(const IntegralImage& itg, std::size_t cx, std::size_t cy, std::size_t side)
{
    if (side % 2 == 0)
    {
        throw std::invalid_argument("window side must be odd, got " + std::to_string(side));
    }
    if (cx >= itg.width() || cy >= itg.height())
    {
        throw std::out_of_range("window centre outside image");
    }
    const auto rect = clamped_window(itg.width(), itg.height(), cx, cy, side);
    return {itg.unchecked_rect_sum(rect.x1, rect.y1, rect.x2, rect.y2), rect.count()};
}

struct WindowMean
{
    double mean = 0.0;
    std::size_t count = 0;
};

inline WindowMean clamped_window_mean(const IntegralImage& itg, std::size_t cx, std::size_t cy, std::size_t side)
{
    const auto ws = clamped_window_sum(itg, cx, cy, side);
    return {ws.mean(), ws.count};
}

} // namespace threshkit
