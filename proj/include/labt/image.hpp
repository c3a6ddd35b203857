#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace labt {

enum class Label : std::uint8_t { background = 0, foreground = 1 };

/// Row-major 2-D raster. Width and height are always at least one pixel.
template <typename Pixel>
class Image {
public:
    using value_type = Pixel;

    Image(int width, int height, Pixel fill = Pixel{})
        : width_(width), height_(height)
    {
        check_dims(width, height);
        pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }

    Image(int width, int height, std::vector<Pixel> pixels)
        : width_(width), height_(height), pixels_(std::move(pixels))
    {
        check_dims(width, height);
        if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
            throw std::invalid_argument("pixel count does not match image dimensions");
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return pixels_.size(); }

    Pixel operator()(int row, int col) const noexcept { return pixels_[index(row, col)]; }
    Pixel& operator()(int row, int col) noexcept { return pixels_[index(row, col)]; }

    std::span<const Pixel> row(int r) const noexcept
    {
        return {pixels_.data() + index(r, 0), static_cast<std::size_t>(width_)};
    }
    std::span<Pixel> row(int r) noexcept
    {
        return {pixels_.data() + index(r, 0), static_cast<std::size_t>(width_)};
    }

    std::span<const Pixel> pixels() const noexcept { return pixels_; }
    std::span<Pixel> pixels() noexcept { return pixels_; }

    friend bool operator==(const Image&, const Image&) = default;

private:
    static void check_dims(int width, int height)
    {
        if (width < 1 || height < 1)
            throw std::invalid_argument("image dimensions must be at least 1x1");
    }

    std::size_t index(int row, int col) const noexcept
    {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_)
             + static_cast<std::size_t>(col);
    }

    int width_;
    int height_;
    std::vector<Pixel> pixels_;
};

using GrayImage = Image<std::uint8_t>;
using BinaryImage = Image<Label>;

// ---------------------------------------------------------------------------
// PGM I/O

class PgmError : public std::runtime_error {
public:
    enum class Kind {
        bad_magic,          // not "P2" / "P5"
        bad_token,          // header field or ASCII sample is not a number
        maxval_out_of_range,// maxval outside [1, 255]
        sample_out_of_range,// ASCII sample larger than maxval
        truncated,          // fewer samples than width * height
    };

    PgmError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Parses a binary (P5) or ASCII (P2) PGM. Samples are taken verbatim; a
/// maxval below 255 is not rescaled.
GrayImage read_pgm(std::span<const std::uint8_t> bytes);
GrayImage read_pgm_file(const std::filesystem::path& path);

/// Always emits P5 with maxval 255. Binary images map background to 0 and
/// foreground to 255.
std::vector<std::uint8_t> write_pgm(const GrayImage& img);
std::vector<std::uint8_t> write_pgm(const BinaryImage& img);
void write_pgm_file(const std::filesystem::path& path, const GrayImage& img);
void write_pgm_file(const std::filesystem::path& path, const BinaryImage& img);

GrayImage to_gray(const BinaryImage& img);

// ---------------------------------------------------------------------------
// Geometry

template <typename Pixel>
Image<Pixel> flip_vertical(const Image<Pixel>& img)
{
    Image<Pixel> out(img.width(), img.height());
    for (int r = 0; r < img.height(); ++r) {
        auto src = img.row(r);
        auto dst = out.row(img.height() - 1 - r);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    return out;
}

template <typename Pixel>
Image<Pixel> flip_horizontal(const Image<Pixel>& img)
{
    Image<Pixel> out(img.width(), img.height());
    for (int r = 0; r < img.height(); ++r) {
        auto src = img.row(r);
        auto dst = out.row(r);
        std::copy(src.rbegin(), src.rend(), dst.begin());
    }
    return out;
}

/// Top-left width x height sub-rectangle.
template <typename Pixel>
Image<Pixel> crop(const Image<Pixel>& img, int width, int height)
{
    if (width < 1 || height < 1 || width > img.width() || height > img.height())
        throw std::out_of_range("crop rectangle exceeds image bounds");
    Image<Pixel> out(width, height);
    for (int r = 0; r < height; ++r) {
        auto src = img.row(r).first(static_cast<std::size_t>(width));
        std::copy(src.begin(), src.end(), out.row(r).begin());
    }
    return out;
}

struct PaddedImage {
    GrayImage image;
    int original_width;
    int original_height;
};

/// Grows the image to the next multiple of the block size by replicating the
/// last column and then the last row.
PaddedImage pad_to_multiple(const GrayImage& img, int block_w, int block_h);

// ---------------------------------------------------------------------------
// Statistics

struct Histogram {
    std::array<std::uint64_t, 256> counts{};
    std::uint64_t total = 0;

    void add(std::uint8_t value) noexcept
    {
        ++counts[value];
        ++total;
    }
};

Histogram histogram(const GrayImage& img);

/// Histogram of the rectangle [x, x + w) x [y, y + h).
Histogram histogram(const GrayImage& img, int x, int y, int w, int h);

/// Population variance of the intensities.
double variance(const GrayImage& img);

} // namespace labt
