#pragma once

// Netpbm reader/writer restricted to 8-bit data: P2/P3/P5/P6 in, P5/P6 out.

#include <cctype>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <threshkit/raster.hpp>

namespace threshkit
{

enum class PnmErrorKind
{
    bad_magic,
    malformed_header,
    unsupported_maxval,
    zero_dimension,
    truncated_data,
    bad_sample,
};

inline std::string_view to_string(PnmErrorKind kind) noexcept
{
    switch (kind)
    {
    case PnmErrorKind::bad_magic: return "bad magic number";
    case PnmErrorKind::malformed_header: return "malformed header";
    case PnmErrorKind::unsupported_maxval: return "unsupported maxval";
    case PnmErrorKind::zero_dimension: return "zero dimension";
    case PnmErrorKind::truncated_data: return "truncated pixel data";
    case PnmErrorKind::bad_sample: return "bad sample value";
    }
    return "unknown";
}

class PnmError : public std::runtime_error
{
public:
    PnmError(PnmErrorKind kind, const std::string& detail)
        : std::runtime_error("pnm: " + std::string(to_string(kind)) + (detail.empty() ? "" : ": " + detail)),
          m_kind(kind)
    {
    }

    PnmErrorKind kind() const noexcept { return m_kind; }

private:
    PnmErrorKind m_kind;
};

using AnyImage = std::variant<GrayImage, RgbImage>;

namespace detail
{

class PnmCursor
{
public:
    explicit PnmCursor(std::span<const std::uint8_t> bytes) : m_bytes(bytes) {}

    void skip_space_and_comments()
    {
        while (m_pos < m_bytes.size())
        {
            const auto c = m_bytes[m_pos];
            if (c == '#')
            {
                while (m_pos < m_bytes.size() && m_bytes[m_pos] != '\n' && m_bytes[m_pos] != '\r')
                {
                    ++m_pos;
                }
            }
            else if (std::isspace(c))
            {
                ++m_pos;
            }
            else
            {
                break;
            }
        }
    }

    // Returns false if no digits are available at the cursor.
    bool read_uint(unsigned long long& value)
    {
        skip_space_and_comments();
        const auto start = m_pos;
        value = 0;
        while (m_pos < m_bytes.size() && std::isdigit(m_bytes[m_pos]))
        {
            if (value > 1'000'000'000ULL)
            {
                return false;
            }
            value = value * 10 + (m_bytes[m_pos] - '0');
            ++m_pos;
        }
        return m_pos != start;
    }

    bool at_end() const noexcept { return m_pos >= m_bytes.size(); }
    std::size_t pos() const noexcept { return m_pos; }
    std::uint8_t peek() const noexcept { return m_bytes[m_pos]; }
    void advance(std::size_t n) noexcept { m_pos += n; }
    std::size_t remaining() const noexcept { return m_bytes.size() - m_pos; }
    std::span<const std::uint8_t> rest() const noexcept { return m_bytes.subspan(m_pos); }

private:
    std::span<const std::uint8_t> m_bytes;
    std::size_t m_pos = 0;
};

inline std::vector<std::uint8_t> read_samples(PnmCursor& cur, std::size_t count, bool ascii)
{
    std::vector<std::uint8_t> samples(count);
    if (ascii)
    {
        for (std::size_t i = 0; i < count; ++i)
        {
            unsigned long long v = 0;
            if (!cur.read_uint(v))
            {
                cur.skip_space_and_comments();
                if (cur.at_end())
                {
                    throw PnmError(PnmErrorKind::truncated_data,
                                   "expected " + std::to_string(count) + " samples, got " + std::to_string(i));
                }
                throw PnmError(PnmErrorKind::bad_sample, "non-numeric sample at byte " + std::to_string(cur.pos()));
            }
            if (v > 255)
            {
                throw PnmError(PnmErrorKind::bad_sample, "sample " + std::to_string(v) + " exceeds maxval");
            }
            samples[i] = static_cast<std::uint8_t>(v);
        }
        return samples;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    if (cur.at_end() || !std::isspace(cur.peek()))
    {
        throw PnmError(PnmErrorKind::malformed_header, "missing separator before raster");
    }
    cur.advance(1);
    if (cur.remaining() < count)
    {
        throw PnmError(PnmErrorKind::truncated_data,
                       "expected " + std::to_string(count) + " bytes, got " + std::to_string(cur.remaining()));
    }
    const auto raster = cur.rest().first(count);
    samples.assign(raster.begin(), raster.end());
    return samples;
}

inline std::vector<std::uint8_t> header(std::string_view magic, std::size_t width, std::size_t height)
{
    const std::string text =
        std::string(magic) + "\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    return {text.begin(), text.end()};
}

} // namespace detail

inline AnyImage load_pnm(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 2 || bytes[0] != 'P')
    {
        throw PnmError(PnmErrorKind::bad_magic, "");
    }
    const char kind = static_cast<char>(bytes[1]);
    if (kind != '2' && kind != '3' && kind != '5' && kind != '6')
    {
        throw PnmError(PnmErrorKind::bad_magic, std::string("P") + kind);
    }
    const bool ascii = kind == '2' || kind == '3';
    const bool color = kind == '3' || kind == '6';

    detail::PnmCursor cur(bytes.subspan(2));
    if (!cur.at_end() && !std::isspace(cur.peek()) && cur.peek() != '#')
    {
        throw PnmError(PnmErrorKind::bad_magic, "magic not followed by whitespace");
    }

    unsigned long long width = 0, height = 0, maxval = 0;
    if (!cur.read_uint(width) || !cur.read_uint(height) || !cur.read_uint(maxval))
    {
        throw PnmError(PnmErrorKind::malformed_header, "expected width, height and maxval");
    }
    if (width == 0 || height == 0)
    {
        throw PnmError(PnmErrorKind::zero_dimension, std::to_string(width) + "x" + std::to_string(height));
    }
    if (maxval != 255)
    {
        throw PnmError(PnmErrorKind::unsupported_maxval, std::to_string(maxval));
    }

    const std::size_t w = width;
    const std::size_t h = height;
    auto samples = detail::read_samples(cur, w * h * (color ? 3 : 1), ascii);
    if (!color)
    {
        return GrayImage(w, h, std::move(samples));
    }
    std::vector<Rgb> rgb(w * h);
    for (std::size_t i = 0; i < rgb.size(); ++i)
    {
        rgb[i] = Rgb{samples[3 * i], samples[3 * i + 1], samples[3 * i + 2]};
    }
    return RgbImage(w, h, std::move(rgb));
}

inline AnyImage load_pnm(std::string_view text)
{
    return load_pnm(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

inline std::vector<std::uint8_t> save_pnm(const GrayImage& img)
{
    auto out = detail::header("P5", img.width(), img.height());
    out.insert(out.end(), img.pixels().begin(), img.pixels().end());
    return out;
}

inline std::vector<std::uint8_t> save_pnm(const BinaryImage& img)
{
    auto out = detail::header("P5", img.width(), img.height());
    for (auto label : img.pixels())
    {
        out.push_back(label ? 255 : 0);
    }
    return out;
}

inline std::vector<std::uint8_t> save_pnm(const RgbImage& img)
{
    auto out = detail::header("P6", img.width(), img.height());
    out.reserve(out.size() + img.size() * 3);
    for (const auto& c : img.pixels())
    {
        out.push_back(c.r);
        out.push_back(c.g);
        out.push_back(c.b);
    }
    return out;
}

/// Byte offset of the raster in a buffer produced by save_pnm.
inline std::size_t pnm_body_offset(std::span<const std::uint8_t> bytes)
{
    std::size_t newlines = 0;
    for (std::size_t i = 0; i < bytes.size(); ++i)
    {
        if (bytes[i] == '\n' && ++newlines == 3)
        {
            return i + 1;
        }
    }
    throw PnmError(PnmErrorKind::malformed_header, "not a canonical header");
}

/// Reinterprets a decoded image as grayscale, converting color via luma.
inline GrayImage as_gray(const AnyImage& img)
{
    if (const auto* gray = std::get_if<GrayImage>(&img))
    {
        return *gray;
    }
    return rgb_to_gray(std::get<RgbImage>(img));
}

/// Any nonzero sample is foreground.
inline BinaryImage as_binary(const GrayImage& img)
{
    BinaryImage out(img.width(), img.height());
    std::ranges::transform(img.pixels(), out.pixels().begin(), [](std::uint8_t v) -> std::uint8_t { return v ? 1 : 0; });
    return out;
}

} // namespace threshkit
