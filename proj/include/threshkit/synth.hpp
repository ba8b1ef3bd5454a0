#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include <threshkit/raster.hpp>

namespace threshkit
{

struct CheckerboardSpec
{
    std::size_t width = 64;
    std::size_t height = 64;
    std::size_t cell_size = 8;
    int lo = 0;
    int hi = 200;
    // Total additive brightness change from the leftmost to the rightmost column.
    int gradient_span = 0;
};

struct Scene
{
    GrayImage image;
    BinaryImage truth;
};

/// Intensity offset added to column x of a scene with the given ramp.
inline int ramp_offset(std::size_t x, std::size_t width, int gradient_span) noexcept
{
    if (width <= 1)
    {
        return 0;
    }
    // floor of span * x / (width - 1), also for negative spans
    const long long num = static_cast<long long>(gradient_span) * static_cast<long long>(x);
    const long long den = static_cast<long long>(width - 1);
    long long q = num / den;
    if (num % den != 0 && num < 0)
    {
        --q;
    }
    return static_cast<int>(q);
}

/// Checkerboard of lo/hi cells under a left-to-right linear illumination
/// ramp. Cell (0,0) is dark. The truth mask marks hi cells and ignores the ramp.
inline Scene gen_gradient_checkerboard(const CheckerboardSpec& spec)
{
    if (spec.width == 0 || spec.height == 0 || spec.cell_size == 0)
    {
        throw std::invalid_argument("checkerboard dimensions must be positive");
    }
    if (spec.cell_size > spec.width || spec.cell_size > spec.height)
    {
        throw std::invalid_argument("cell size exceeds image dimensions");
    }
    if (spec.lo >= spec.hi)
    {
        throw std::invalid_argument("checkerboard requires lo < hi");
    }
    if (spec.lo < 0 || spec.hi > 255)
    {
        throw std::invalid_argument("checkerboard intensities must lie in [0,255]");
    }

    GrayImage image(spec.width, spec.height);
    BinaryImage truth(spec.width, spec.height);
    for (std::size_t y = 0; y < spec.height; ++y)
    {
        for (std::size_t x = 0; x < spec.width; ++x)
        {
            const bool bright = ((x / spec.cell_size) + (y / spec.cell_size)) % 2 == 1;
            const int base = bright ? spec.hi : spec.lo;
            image(x, y) = static_cast<std::uint8_t>(std::clamp(base + ramp_offset(x, spec.width, spec.gradient_span), 0, 255));
            truth(x, y) = bright ? 1 : 0;
        }
    }
    return {std::move(image), std::move(truth)};
}

} // namespace threshkit
