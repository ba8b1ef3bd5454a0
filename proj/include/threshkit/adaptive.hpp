#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <threshkit/integral.hpp>
#include <threshkit/raster.hpp>

namespace threshkit
{

inline void check_percent(double t_percent)
{
    if (!(t_percent >= 0.0 && t_percent < 100.0))
    {
        throw std::invalid_argument("percent must lie in [0, 100), got " + std::to_string(t_percent));
    }
}

/// Wellner-style running-average threshold over a single row-major raster
/// scan. The average g starts at mid-gray and is updated before each
/// comparison: g <- g * (1 - 1/span) + pixel / span. A pixel is background
/// when it is below g * (100 - t_percent) / 100.
///
/// The result depends on the scan order; bradley_threshold does not.
inline BinaryImage moving_average_threshold(const GrayImage& img, std::size_t span, double t_percent)
{
    if (span == 0)
    {
        throw std::invalid_argument("moving-average span must be at least 1");
    }
    check_percent(t_percent);

    const double keep = 1.0 - 1.0 / static_cast<double>(span);
    const double factor = (100.0 - t_percent) / 100.0;

    BinaryImage out(img.width(), img.height());
    double g = 127.0;
    auto dst = out.pixels().begin();
    for (auto v : img.pixels())
    {
        g = g * keep + static_cast<double>(v) / static_cast<double>(span);
        *dst++ = static_cast<double>(v) < g * factor ? 0 : 1;
    }
    return out;
}

/// Window side and percent for the integral-image local-mean method.
class AdaptiveParams
{
public:
    AdaptiveParams(std::size_t s_window, double t_percent) : m_window(s_window), m_percent(t_percent)
    {
        if (s_window == 0 || s_window % 2 == 0)
        {
            throw std::invalid_argument("window must be odd and positive, got " + std::to_string(s_window));
        }
        check_percent(t_percent);
    }

    std::size_t window() const noexcept { return m_window; }
    double percent() const noexcept { return m_percent; }

    static constexpr double default_percent = 15.0;

    /// Largest odd side <= max(3, width / 8).
    static std::size_t default_window(std::size_t width) noexcept
    {
        const std::size_t cap = std::max<std::size_t>(3, width / 8);
        return cap % 2 == 1 ? cap : cap - 1;
    }

    static AdaptiveParams defaults_for(const GrayImage& img) { return {default_window(img.width()), default_percent}; }

private:
    std::size_t m_window;
    double m_percent;
};

/// Label of a single pixel under the clamped-window percent-of-mean rule:
/// background iff pixel * count <= sum * (100 - t) / 100. Ties go to
/// background. Both sides are scaled by 100 so integer percents compare
/// exactly.
inline std::uint8_t bradley_pixel(const GrayImage& img, const IntegralImage& itg, std::size_t x, std::size_t y,
                                  const AdaptiveParams& params)
{
    const auto ws = clamped_window_sum(itg, x, y, params.window());
    const double lhs = static_cast<double>(img(x, y)) * static_cast<double>(ws.count) * 100.0;
    const double rhs = static_cast<double>(ws.sum) * (100.0 - params.percent());
    return lhs <= rhs ? 0 : 1;
}

/// Integral-image adaptive threshold. One pass builds the table, a second
/// compares every pixel against its clamped S x S window mean.
inline BinaryImage bradley_threshold(const GrayImage& img, const AdaptiveParams& params)
{
    const IntegralImage itg(img);
    BinaryImage out(img.width(), img.height());
    for (std::size_t y = 0; y < img.height(); ++y)
    {
        for (std::size_t x = 0; x < img.width(); ++x)
        {
            out(x, y) = bradley_pixel(img, itg, x, y, params);
        }
    }
    return out;
}

} // namespace threshkit
