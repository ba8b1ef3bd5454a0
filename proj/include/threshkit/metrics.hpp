#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <threshkit/raster.hpp>

namespace threshkit
{

struct Point
{
    std::size_t x = 0;
    std::size_t y = 0;

    friend auto operator<=>(const Point&, const Point&) = default;
};

class NoContourError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline void check_same_size(const BinaryImage& a, const BinaryImage& b)
{
    if (a.width() != b.width() || a.height() != b.height())
    {
        throw std::invalid_argument("image dimensions differ: " + std::to_string(a.width()) + "x" +
                                    std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                                    std::to_string(b.height()));
    }
}

inline bool is_edge(const BinaryImage& bin, std::size_t x, std::size_t y) noexcept
{
    const auto v = bin(x, y);
    return (x > 0 && bin(x - 1, y) != v) || (x + 1 < bin.width() && bin(x + 1, y) != v) ||
           (y > 0 && bin(x, y - 1) != v) || (y + 1 < bin.height() && bin(x, y + 1) != v);
}

/// Pixels whose label differs from at least one in-bounds 4-neighbour,
/// in row-major order.
inline std::vector<Point> edge_pixels(const BinaryImage& bin)
{
    std::vector<Point> edges;
    for (std::size_t y = 0; y < bin.height(); ++y)
    {
        for (std::size_t x = 0; x < bin.width(); ++x)
        {
            if (is_edge(bin, x, y))
            {
                edges.push_back({x, y});
            }
        }
    }
    return edges;
}

namespace detail
{

// Lower envelope of parabolas (Felzenszwalb & Huttenlocher); f holds squared
// distances along one line, "infinity" marks empty sites.
inline void squared_edt_1d(std::vector<double>& f, std::vector<double>& d, std::vector<std::size_t>& v,
                           std::vector<double>& z)
{
    const std::size_t n = f.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::size_t k = 0;
    std::size_t first = n;
    for (std::size_t q = 0; q < n; ++q)
    {
        if (f[q] != inf)
        {
            first = q;
            break;
        }
    }
    if (first == n)
    {
        return; // no sites on this line; values stay infinite
    }
    v[0] = first;
    z[0] = -inf;
    z[1] = inf;
    for (std::size_t q = first + 1; q < n; ++q)
    {
        if (f[q] == inf)
        {
            continue;
        }
        const auto qd = static_cast<double>(q);
        double s = 0.0;
        while (true)
        {
            const auto vk = static_cast<double>(v[k]);
            s = ((f[q] + qd * qd) - (f[v[k]] + vk * vk)) / (2.0 * qd - 2.0 * vk);
            if (s <= z[k] && k > 0)
            {
                --k;
                continue;
            }
            break;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = inf;
    }
    k = 0;
    for (std::size_t q = 0; q < n; ++q)
    {
        const auto qd = static_cast<double>(q);
        while (z[k + 1] < qd)
        {
            ++k;
        }
        const auto dq = qd - static_cast<double>(v[k]);
        d[q] = dq * dq + f[v[k]];
    }
    std::copy(d.begin(), d.end(), f.begin());
}

} // namespace detail

/// Exact squared Euclidean distance from every pixel to the nearest site
/// (row-major). Separable: columns first, then rows.
inline std::vector<double> squared_distance_transform(std::size_t width, std::size_t height,
                                                      const std::vector<Point>& sites)
{
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> grid(width * height, inf);
    for (const auto& p : sites)
    {
        grid[p.y * width + p.x] = 0.0;
    }

    const std::size_t n = std::max(width, height);
    std::vector<double> f, d;
    std::vector<std::size_t> v(n);
    std::vector<double> z(n + 1);

    f.resize(height);
    d.resize(height);
    for (std::size_t x = 0; x < width; ++x)
    {
        for (std::size_t y = 0; y < height; ++y)
            f[y] = grid[y * width + x];
        detail::squared_edt_1d(f, d, v, z);
        for (std::size_t y = 0; y < height; ++y)
            grid[y * width + x] = f[y];
    }

    f.resize(width);
    d.resize(width);
    for (std::size_t y = 0; y < height; ++y)
    {
        std::copy_n(grid.begin() + static_cast<std::ptrdiff_t>(y * width), width, f.begin());
        detail::squared_edt_1d(f, d, v, z);
        std::copy_n(f.begin(), width, grid.begin() + static_cast<std::ptrdiff_t>(y * width));
    }
    return grid;
}

struct ContourStats
{
    double mean_distance = 0.0;
    double std_distance = 0.0; // population
    double max_distance = 0.0;
    std::size_t matched = 0;
};

/// For each contour pixel of the ideal mask, the Euclidean distance to the
/// closest edge pixel of the classified image, summarised.
inline ContourStats contour_distance(const BinaryImage& classified, const BinaryImage& ideal)
{
    check_same_size(classified, ideal);
    const auto ideal_edges = edge_pixels(ideal);
    if (ideal_edges.empty())
    {
        throw NoContourError("ideal image has no contour pixels");
    }
    const auto found_edges = edge_pixels(classified);
    if (found_edges.empty())
    {
        throw NoContourError("classified image has no contour pixels");
    }

    const auto dist2 = squared_distance_transform(classified.width(), classified.height(), found_edges);

    ContourStats stats;
    stats.matched = ideal_edges.size();
    double sum = 0.0;
    std::vector<double> dists;
    dists.reserve(ideal_edges.size());
    for (const auto& p : ideal_edges)
    {
        const double dd = std::sqrt(dist2[p.y * ideal.width() + p.x]);
        dists.push_back(dd);
        sum += dd;
        stats.max_distance = std::max(stats.max_distance, dd);
    }
    stats.mean_distance = sum / static_cast<double>(dists.size());
    double var = 0.0;
    for (auto dd : dists)
    {
        var += (dd - stats.mean_distance) * (dd - stats.mean_distance);
    }
    stats.std_distance = std::sqrt(var / static_cast<double>(dists.size()));
    return stats;
}

inline double foreground_ratio(const BinaryImage& bin) noexcept
{
    const auto fg = std::ranges::count(bin.pixels(), std::uint8_t{1});
    return static_cast<double>(fg) / static_cast<double>(bin.size());
}

struct Confusion
{
    std::uint64_t tp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const noexcept { return tp + tn + fp + fn; }
    double accuracy() const noexcept { return static_cast<double>(tp + tn) / static_cast<double>(total()); }
};

inline Confusion pixel_accuracy(const BinaryImage& classified, const BinaryImage& truth)
{
    check_same_size(classified, truth);
    Confusion c;
    const auto got = classified.pixels();
    const auto want = truth.pixels();
    for (std::size_t i = 0; i < got.size(); ++i)
    {
        if (got[i])
            ++(want[i] ? c.tp : c.fp);
        else
            ++(want[i] ? c.fn : c.tn);
    }
    return c;
}

} // namespace threshkit
