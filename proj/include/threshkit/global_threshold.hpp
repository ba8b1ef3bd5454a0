#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <threshkit/raster.hpp>

namespace threshkit
{

/// Foreground iff pixel >= t. Thresholds outside [0, 255] saturate.
inline BinaryImage threshold_fixed(const GrayImage& img, int t)
{
    BinaryImage out(img.width(), img.height());
    std::ranges::transform(img.pixels(), out.pixels().begin(),
                           [t](std::uint8_t v) -> std::uint8_t { return static_cast<int>(v) >= t ? 1 : 0; });
    return out;
}

/// Inclusive intensity interval [t1, t2].
class BandThreshold
{
public:
    BandThreshold(int t1, int t2) : m_t1(t1), m_t2(t2)
    {
        if (t1 < 0 || t2 > 255 || t1 > t2)
        {
            throw std::invalid_argument("band requires 0 <= t1 <= t2 <= 255, got (" + std::to_string(t1) + ", " +
                                        std::to_string(t2) + ")");
        }
    }

    int t1() const noexcept { return m_t1; }
    int t2() const noexcept { return m_t2; }
    bool contains(int v) const noexcept { return m_t1 <= v && v <= m_t2; }

private:
    int m_t1;
    int m_t2;
};

inline BinaryImage threshold_band(const GrayImage& img, const BandThreshold& band)
{
    BinaryImage out(img.width(), img.height());
    std::ranges::transform(img.pixels(), out.pixels().begin(),
                           [&band](std::uint8_t v) -> std::uint8_t { return band.contains(v) ? 1 : 0; });
    return out;
}

using Histogram = std::array<std::uint64_t, 256>;

inline Histogram histogram(const GrayImage& img) noexcept
{
    Histogram h{};
    for (auto v : img.pixels())
    {
        ++h[v];
    }
    return h;
}

/// Arithmetic mean of all intensities.
inline double global_mean(const GrayImage& img) noexcept
{
    const auto total = std::accumulate(img.pixels().begin(), img.pixels().end(), std::uint64_t{0});
    return static_cast<double>(total) / static_cast<double>(img.size());
}

inline constexpr double default_peak_epsilon = 0.5;
inline constexpr int max_peak_iterations = 256;

/// Two-peak refinement: each class's peak is taken as its mean gray level
/// and the threshold moves to the midpoint of the two peaks, starting from
/// the global mean. Returns early when either class is empty.
inline double iterative_peak_threshold(const GrayImage& img, double epsilon = default_peak_epsilon)
{
    if (!(epsilon > 0.0))
    {
        throw std::invalid_argument("epsilon must be positive");
    }
    const auto hist = histogram(img);

    double t = global_mean(img);
    for (int iter = 0; iter < max_peak_iterations; ++iter)
    {
        std::uint64_t n_lo = 0, n_hi = 0, s_lo = 0, s_hi = 0;
        for (int v = 0; v < 256; ++v)
        {
            if (v < t)
            {
                n_lo += hist[v];
                s_lo += hist[v] * static_cast<std::uint64_t>(v);
            }
            else
            {
                n_hi += hist[v];
                s_hi += hist[v] * static_cast<std::uint64_t>(v);
            }
        }
        if (n_lo == 0 || n_hi == 0)
        {
            return t;
        }
        const double next = (static_cast<double>(s_lo) / n_lo + static_cast<double>(s_hi) / n_hi) / 2.0;
        const double step = std::abs(next - t);
        t = next;
        if (step < epsilon)
        {
            break;
        }
    }
    return t;
}

/// Foreground iff pixel >= t for a real-valued threshold.
inline BinaryImage threshold_at(const GrayImage& img, double t)
{
    return threshold_fixed(img, static_cast<int>(std::clamp(std::ceil(t), -1.0, 256.0)));
}

/// Ball in RGB space, boundary inclusive.
class ColorSphere
{
public:
    ColorSphere(Rgb reference, double radius) : m_reference(reference), m_radius(radius)
    {
        if (!(radius >= 0.0))
        {
            throw std::invalid_argument("sphere radius must be non-negative");
        }
    }

    Rgb reference() const noexcept { return m_reference; }
    double radius() const noexcept { return m_radius; }

    bool contains(Rgb c) const noexcept
    {
        const long dr = long{c.r} - m_reference.r;
        const long dg = long{c.g} - m_reference.g;
        const long db = long{c.b} - m_reference.b;
        const long d2 = dr * dr + dg * dg + db * db;
        return static_cast<double>(d2) <= m_radius * m_radius;
    }

private:
    Rgb m_reference;
    double m_radius;
};

inline BinaryImage color_sphere_threshold(const RgbImage& img, const ColorSphere& sphere)
{
    BinaryImage out(img.width(), img.height());
    std::ranges::transform(img.pixels(), out.pixels().begin(),
                           [&sphere](Rgb c) -> std::uint8_t { return sphere.contains(c) ? 1 : 0; });
    return out;
}

/// Uniform partition of the RGB cube into bins^3 cells of edge 256 / bins.
class ColorHistogram
{
public:
    explicit ColorHistogram(std::size_t bins_per_channel) : m_bins(bins_per_channel)
    {
        if (bins_per_channel == 0 || bins_per_channel > 256 || 256 % bins_per_channel != 0)
        {
            throw std::invalid_argument("bins per channel must divide 256, got " + std::to_string(bins_per_channel));
        }
        m_counts.assign(m_bins * m_bins * m_bins, 0);
    }

    std::size_t bins_per_channel() const noexcept { return m_bins; }
    std::size_t bin_width() const noexcept { return 256 / m_bins; }

    void add(Rgb c) noexcept
    {
        const auto w = bin_width();
        ++m_counts[index(c.r / w, c.g / w, c.b / w)];
    }

    std::uint64_t count(std::size_t rb, std::size_t gb, std::size_t bb) const { return m_counts.at(index(rb, gb, bb)); }

    std::uint64_t total() const noexcept
    {
        return std::accumulate(m_counts.begin(), m_counts.end(), std::uint64_t{0});
    }

    // Iterates non-empty bins in (r, g, b) lexicographic order.
    template <typename F>
    void for_each_nonempty(F&& f) const
    {
        for (std::size_t r = 0; r < m_bins; ++r)
            for (std::size_t g = 0; g < m_bins; ++g)
                for (std::size_t b = 0; b < m_bins; ++b)
                    if (const auto n = m_counts[index(r, g, b)]; n > 0)
                        f(r, g, b, n);
    }

private:
    std::size_t index(std::size_t r, std::size_t g, std::size_t b) const noexcept
    {
        return (r * m_bins + g) * m_bins + b;
    }

    std::size_t m_bins;
    std::vector<std::uint64_t> m_counts;
};

inline ColorHistogram color_histogram(const RgbImage& img, std::size_t bins_per_channel)
{
    ColorHistogram hist(bins_per_channel);
    for (const auto& c : img.pixels())
    {
        hist.add(c);
    }
    return hist;
}

} // namespace threshkit
