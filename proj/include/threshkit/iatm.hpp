#pragma once

// Dual-window adaptive threshold with a sensitivity gate.
//
// For every pixel the brightness I is the mean over a small pixel window and
// the local threshold T_L is the mean over a larger threshold window, both
// read in O(1) from one integral image. When |I - T_L| >= sensitivity the
// pixel is foreground iff I >= T_L. Otherwise the local contrast is deemed
// unreliable and the pixel is foreground iff I >= T_G, the image mean.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <threshkit/global_threshold.hpp>
#include <threshkit/integral.hpp>
#include <threshkit/raster.hpp>

namespace threshkit
{

class IatmParams
{
public:
    IatmParams(std::size_t pixel_window, std::size_t threshold_window, double sensitivity)
        : m_pixel_window(pixel_window), m_threshold_window(threshold_window), m_sensitivity(sensitivity)
    {
        if (pixel_window == 0 || pixel_window % 2 == 0)
        {
            throw std::invalid_argument("pixel window must be odd and positive, got " + std::to_string(pixel_window));
        }
        if (threshold_window % 2 == 0)
        {
            throw std::invalid_argument("threshold window must be odd, got " + std::to_string(threshold_window));
        }
        if (threshold_window <= pixel_window)
        {
            throw std::invalid_argument("threshold window (" + std::to_string(threshold_window) +
                                        ") must be larger than pixel window (" + std::to_string(pixel_window) + ")");
        }
        if (!(sensitivity >= 0.0) || !std::isfinite(sensitivity))
        {
            throw std::invalid_argument("sensitivity must be a finite non-negative value");
        }
    }

    std::size_t pixel_window() const noexcept { return m_pixel_window; }
    std::size_t threshold_window() const noexcept { return m_threshold_window; }
    double sensitivity() const noexcept { return m_sensitivity; }

    static constexpr std::size_t default_pixel_window = 3;
    static constexpr std::size_t default_threshold_window = 15;
    static constexpr double default_sensitivity = 10.0;

    static IatmParams defaults() { return {default_pixel_window, default_threshold_window, default_sensitivity}; }

private:
    std::size_t m_pixel_window;
    std::size_t m_threshold_window;
    double m_sensitivity;
};

struct IatmPixelTrace
{
    double brightness = 0.0;
    double local_threshold = 0.0;
    double abs_diff = 0.0;
    bool used_global = false;
    std::uint8_t label = 0;
};

inline double pixel_brightness(const IntegralImage& itg, std::size_t x, std::size_t y, std::size_t pixel_window)
{
    return clamped_window_mean(itg, x, y, pixel_window).mean;
}

inline double local_threshold(const IntegralImage& itg, std::size_t x, std::size_t y, std::size_t threshold_window)
{
    return clamped_window_mean(itg, x, y, threshold_window).mean;
}

/// Steps 4-7 for one pixel given the precomputed image mean.
inline IatmPixelTrace iatm_pixel(const IntegralImage& itg, std::size_t x, std::size_t y, const IatmParams& params,
                                 double global_threshold)
{
    IatmPixelTrace t;
    t.brightness = pixel_brightness(itg, x, y, params.pixel_window());
    t.local_threshold = local_threshold(itg, x, y, params.threshold_window());
    t.abs_diff = std::abs(t.brightness - t.local_threshold);
    t.used_global = t.abs_diff < params.sensitivity();
    const double threshold = t.used_global ? global_threshold : t.local_threshold;
    t.label = t.brightness >= threshold ? 1 : 0;
    return t;
}

struct IatmResult
{
    BinaryImage labels;
    double global_threshold = 0.0;
    std::vector<IatmPixelTrace> trace; // row-major, empty unless requested
};

inline IatmResult iatm_run(const GrayImage& img, const IatmParams& params, bool with_trace)
{
    const IntegralImage itg(img);
    const double tg = static_cast<double>(itg.total()) / static_cast<double>(img.size());

    IatmResult result{BinaryImage(img.width(), img.height()), tg, {}};
    if (with_trace)
    {
        result.trace.resize(img.size());
    }
    for (std::size_t y = 0; y < img.height(); ++y)
    {
        for (std::size_t x = 0; x < img.width(); ++x)
        {
            const auto t = iatm_pixel(itg, x, y, params, tg);
            result.labels(x, y) = t.label;
            if (with_trace)
            {
                result.trace[y * img.width() + x] = t;
            }
        }
    }
    return result;
}

inline BinaryImage iatm_classify(const GrayImage& img, const IatmParams& params)
{
    return iatm_run(img, params, false).labels;
}

inline IatmResult iatm_classify_traced(const GrayImage& img, const IatmParams& params)
{
    return iatm_run(img, params, true);
}

} // namespace threshkit
