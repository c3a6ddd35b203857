#include "labt/image.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <optional>
#include <string_view>

namespace labt {

namespace {

class PgmScanner {
public:
    explicit PgmScanner(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::size_t pos() const noexcept { return pos_; }
    std::span<const std::uint8_t> rest() const noexcept { return bytes_.subspan(pos_); }

    // Skips whitespace and '#' comments that run to end of line.
    void skip_separators()
    {
        while (pos_ < bytes_.size()) {
            const auto c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r')
                    ++pos_;
            } else if (std::isspace(c)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    // Reads the next whitespace-delimited token; empty at end of input.
    std::string_view token()
    {
        skip_separators();
        const std::size_t start = pos_;
        while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#')
            ++pos_;
        return {reinterpret_cast<const char*>(bytes_.data()) + start, pos_ - start};
    }

    std::optional<long> number(const char* what)
    {
        const auto tok = token();
        if (tok.empty())
            return std::nullopt;
        long value = 0;
        for (char c : tok) {
            if (c < '0' || c > '9')
                throw PgmError(PgmError::Kind::bad_token,
                               std::string("non-numeric ") + what + " '" + std::string(tok) + "'");
            value = value * 10 + (c - '0');
            if (value > 1'000'000'000L)
                throw PgmError(PgmError::Kind::bad_token, std::string(what) + " too large");
        }
        return value;
    }

    void advance(std::size_t n) noexcept { pos_ += n; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

long header_field(PgmScanner& scan, const char* what)
{
    auto v = scan.number(what);
    if (!v)
        throw PgmError(PgmError::Kind::truncated, std::string("missing ") + what);
    return *v;
}

std::vector<std::uint8_t> pgm_header(int width, int height)
{
    const std::string header =
        "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    return {header.begin(), header.end()};
}

std::vector<char> slurp(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void dump(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

} // namespace

GrayImage read_pgm(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2'))
        throw PgmError(PgmError::Kind::bad_magic, "not a P2/P5 PGM file");
    const bool binary = bytes[1] == '5';
    if (bytes.size() > 2 && !std::isspace(bytes[2]) && bytes[2] != '#')
        throw PgmError(PgmError::Kind::bad_magic, "malformed magic number");

    PgmScanner scan(bytes);
    scan.advance(2);
    const long width = header_field(scan, "width");
    const long height = header_field(scan, "height");
    const long maxval = header_field(scan, "maxval");
    if (width < 1 || height < 1)
        throw PgmError(PgmError::Kind::bad_token, "image dimensions must be positive");
    if (maxval < 1 || maxval > 255)
        throw PgmError(PgmError::Kind::maxval_out_of_range,
                       "maxval " + std::to_string(maxval) + " outside [1, 255]");

    const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<std::uint8_t> pixels;
    pixels.reserve(count);

    if (binary) {
        // Exactly one whitespace byte separates maxval from the raster.
        if (scan.rest().empty())
            throw PgmError(PgmError::Kind::truncated, "missing raster data");
        scan.advance(1);
        const auto raster = scan.rest();
        if (raster.size() < count)
            throw PgmError(PgmError::Kind::truncated,
                           "expected " + std::to_string(count) + " raster bytes, found "
                               + std::to_string(raster.size()));
        pixels.assign(raster.begin(), raster.begin() + static_cast<std::ptrdiff_t>(count));
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            auto v = scan.number("sample");
            if (!v)
                throw PgmError(PgmError::Kind::truncated,
                               "expected " + std::to_string(count) + " samples, found "
                                   + std::to_string(i));
            if (*v > maxval)
                throw PgmError(PgmError::Kind::sample_out_of_range,
                               "sample " + std::to_string(*v) + " exceeds maxval");
            pixels.push_back(static_cast<std::uint8_t>(*v));
        }
    }
    return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

GrayImage read_pgm_file(const std::filesystem::path& path)
{
    const auto raw = slurp(path);
    return read_pgm({reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()});
}

std::vector<std::uint8_t> write_pgm(const GrayImage& img)
{
    auto out = pgm_header(img.width(), img.height());
    out.insert(out.end(), img.pixels().begin(), img.pixels().end());
    return out;
}

std::vector<std::uint8_t> write_pgm(const BinaryImage& img)
{
    auto out = pgm_header(img.width(), img.height());
    out.reserve(out.size() + img.size());
    for (Label l : img.pixels())
        out.push_back(l == Label::foreground ? 255 : 0);
    return out;
}

void write_pgm_file(const std::filesystem::path& path, const GrayImage& img)
{
    dump(path, write_pgm(img));
}

void write_pgm_file(const std::filesystem::path& path, const BinaryImage& img)
{
    dump(path, write_pgm(img));
}

GrayImage to_gray(const BinaryImage& img)
{
    GrayImage out(img.width(), img.height());
    std::transform(img.pixels().begin(), img.pixels().end(), out.pixels().begin(),
                   [](Label l) -> std::uint8_t { return l == Label::foreground ? 255 : 0; });
    return out;
}

PaddedImage pad_to_multiple(const GrayImage& img, int block_w, int block_h)
{
    if (block_w < 1 || block_h < 1)
        throw std::invalid_argument("block dimensions must be positive");
    const int w = (img.width() + block_w - 1) / block_w * block_w;
    const int h = (img.height() + block_h - 1) / block_h * block_h;
    GrayImage out(w, h);
    for (int r = 0; r < h; ++r) {
        auto src = img.row(std::min(r, img.height() - 1));
        auto dst = out.row(r);
        std::copy(src.begin(), src.end(), dst.begin());
        std::fill(dst.begin() + img.width(), dst.end(), src.back());
    }
    return {std::move(out), img.width(), img.height()};
}

Histogram histogram(const GrayImage& img)
{
    Histogram h;
    for (auto p : img.pixels())
        ++h.counts[p];
    h.total = img.size();
    return h;
}

Histogram histogram(const GrayImage& img, int x, int y, int w, int h)
{
    if (x < 0 || y < 0 || w < 0 || h < 0 || x + w > img.width() || y + h > img.height())
        throw std::out_of_range("histogram region exceeds image bounds");
    Histogram hist;
    for (int r = y; r < y + h; ++r)
        for (auto p : img.row(r).subspan(static_cast<std::size_t>(x), static_cast<std::size_t>(w)))
            ++hist.counts[p];
    hist.total = static_cast<std::uint64_t>(w) * static_cast<std::uint64_t>(h);
    return hist;
}

double variance(const GrayImage& img)
{
    // Exact integer moments; n*sum_sq - sum^2 is n^2 times the variance.
    __extension__ using u128 = unsigned __int128;
    std::uint64_t sum = 0;
    std::uint64_t sum_sq = 0;
    for (auto p : img.pixels()) {
        sum += p;
        sum_sq += static_cast<std::uint64_t>(p) * p;
    }
    const auto n = static_cast<u128>(img.size());
    const u128 scaled = n * sum_sq - static_cast<u128>(sum) * sum;
    const double nn = static_cast<double>(n);
    return static_cast<double>(scaled) / (nn * nn);
}

} // namespace labt
