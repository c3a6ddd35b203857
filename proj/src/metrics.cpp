#include "labt/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace labt {

double psnr(const GrayImage& original, const BinaryImage& binary)
{
    if (original.width() != binary.width() || original.height() != binary.height())
        throw std::invalid_argument("psnr: dimension mismatch");
    std::uint64_t sq_err = 0;
    auto a = original.pixels();
    auto b = binary.pixels();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::int64_t mapped = b[i] == Label::foreground ? 255 : 0;
        const std::int64_t d = static_cast<std::int64_t>(a[i]) - mapped;
        sq_err += static_cast<std::uint64_t>(d * d);
    }
    if (sq_err == 0)
        return std::numeric_limits<double>::infinity();
    const double mse = static_cast<double>(sq_err) / static_cast<double>(a.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

long continuity_violations(const LabtResult& result, const BlockGrid& grid, const GrayImage& padded)
{
    if (padded.width() != grid.padded_w() || padded.height() != grid.padded_h())
        throw std::invalid_argument("continuity_violations: image does not match the grid");
    long count = 0;
    std::vector<std::uint8_t> column(static_cast<std::size_t>(grid.block_h));
    for (int m = 0; m < grid.rows; ++m) {
        for (int n = 0; n < grid.cols; ++n) {
            const int x0 = n * grid.block_w;
            const int y0 = m * grid.block_h;
            const int t = result.t(m, n);
            if (m > 0) {
                auto row = padded.row(y0).subspan(static_cast<std::size_t>(x0), static_cast<std::size_t>(grid.block_w));
                count += border_disagreements(t, row, result.t(m - 1, n));
            }
            if (n > 0) {
                for (int r = 0; r < grid.block_h; ++r)
                    column[static_cast<std::size_t>(r)] = padded(y0 + r, x0);
                count += border_disagreements(t, column, result.t(m, n - 1));
            }
        }
    }
    return count;
}

long continuity_violations(const LabtResult& result, const GrayImage& img)
{
    const auto padded = pad_to_multiple(img, result.grid.block_w, result.grid.block_h);
    return continuity_violations(result, result.grid, padded.image);
}

double mean_range_width(const LabtResult& result)
{
    const int blocks = result.grid.block_count();
    if (blocks <= 1)
        return 256.0;
    // Block (0, 0) has no neighbor and therefore no range; skip it.
    long total = 0;
    auto cells = result.ranges.cells();
    for (std::size_t i = 1; i < cells.size(); ++i)
        total += cells[i].width();
    return static_cast<double>(total) / static_cast<double>(blocks - 1);
}

double out_of_range_fraction(const LabtResult& result)
{
    return static_cast<double>(result.out_of_range_count) / static_cast<double>(result.grid.block_count());
}

std::vector<SweepRow> sweep(const GrayImage& img, const LabtConfig& cfg, std::span<const int> block_sizes)
{
    std::vector<SweepRow> rows;
    rows.reserve(block_sizes.size());
    for (const int size : block_sizes) {
        if (size < 2)
            throw std::invalid_argument("sweep block sizes must be at least 2");
        LabtConfig run_cfg = cfg;
        run_cfg.block = BlockSize{size, size};
        const auto res = run_labt(img, run_cfg);
        rows.push_back({size, mean_range_width(res), out_of_range_fraction(res)});
    }
    return rows;
}

std::vector<SweepRow> average_sweeps(std::span<const std::vector<SweepRow>> per_image)
{
    if (per_image.empty())
        throw std::invalid_argument("average_sweeps: no images");
    std::vector<SweepRow> avg = per_image.front();
    for (auto& row : avg)
        row.mean_range_width = row.out_of_range_fraction = 0.0;
    for (const auto& rows : per_image) {
        if (rows.size() != avg.size())
            throw std::invalid_argument("average_sweeps: block size lists differ");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].block_size != avg[i].block_size)
                throw std::invalid_argument("average_sweeps: block size lists differ");
            avg[i].mean_range_width += rows[i].mean_range_width;
            avg[i].out_of_range_fraction += rows[i].out_of_range_fraction;
        }
    }
    const double n = static_cast<double>(per_image.size());
    for (auto& row : avg) {
        row.mean_range_width /= n;
        row.out_of_range_fraction /= n;
    }
    return avg;
}

MethodReport labt_report(std::string method, const GrayImage& original, const LabtResult& result, double elapsed_s)
{
    MethodReport r;
    r.method = std::move(method);
    r.psnr_db = psnr(original, result.binary);
    r.elapsed_s = elapsed_s;
    r.out_of_range_count = result.out_of_range_count;
    r.non_overlap_count = result.non_overlap_count;
    r.mean_range_width = mean_range_width(result);
    r.continuity_violations = continuity_violations(result, original);
    return r;
}

std::string format_real(double value, int decimals)
{
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    if (std::isnan(value))
        return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

namespace {

template <typename T, typename Fmt>
std::string optional_cell(const std::optional<T>& v, Fmt fmt)
{
    return v ? fmt(*v) : std::string("NA");
}

} // namespace

void write_method_csv(std::ostream& out, std::span<const MethodReport> rows)
{
    out << "method,psnr_db_vs_original,elapsed_s,out_of_range_count,non_overlap_count,"
           "mean_range_width,continuity_violations\n";
    const auto as_int = [](auto v) { return std::to_string(v); };
    for (const auto& r : rows) {
        out << r.method << ',' << format_real(r.psnr_db, 4) << ',' << format_real(r.elapsed_s, 3) << ','
            << optional_cell(r.out_of_range_count, as_int) << ','
            << optional_cell(r.non_overlap_count, as_int) << ','
            << optional_cell(r.mean_range_width, [](double v) { return format_real(v, 4); }) << ','
            << optional_cell(r.continuity_violations, as_int) << '\n';
    }
}

void write_sweep_csv(std::ostream& out, std::span<const std::string> images,
                     std::span<const std::vector<SweepRow>> per_image)
{
    if (images.size() != per_image.size())
        throw std::invalid_argument("write_sweep_csv: image/row count mismatch");
    out << "image,block_size,mean_range_width,out_of_range_fraction\n";
    for (std::size_t i = 0; i < images.size(); ++i)
        for (const auto& row : per_image[i])
            out << images[i] << ',' << row.block_size << ',' << format_real(row.mean_range_width, 4) << ','
                << format_real(row.out_of_range_fraction, 6) << '\n';
}

void write_sweep_average_csv(std::ostream& out, std::span<const SweepRow> rows)
{
    out << "block_size,mean_range_width,out_of_range_fraction\n";
    for (const auto& row : rows)
        out << row.block_size << ',' << format_real(row.mean_range_width, 4) << ','
            << format_real(row.out_of_range_fraction, 6) << '\n';
}

} // namespace labt
