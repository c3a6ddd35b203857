#pragma once

#include "labt/engine.hpp"

#include <chrono>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace labt {

/// One row of a method comparison. Block-specific fields are empty for
/// methods that do not partition the image (global Otsu, Niblack).
struct MethodReport {
    std::string method;
    double psnr_db = 0.0;     // +infinity when the images match exactly
    double elapsed_s = 0.0;
    std::optional<int> out_of_range_count;
    std::optional<int> non_overlap_count;
    std::optional<double> mean_range_width;
    std::optional<long> continuity_violations;
};

struct SweepRow {
    int block_size = 0;
    double mean_range_width = 0.0;
    double out_of_range_fraction = 0.0;
};

/// PSNR of the {0, 255}-mapped binary image against the grayscale original.
double psnr(const GrayImage& original, const BinaryImage& binary);

/// Border pixels of each block whose label under the block's threshold
/// differs from the label under the upper (top row) or left (left column)
/// neighbor's threshold, summed over all neighbor pairs.
long continuity_violations(const LabtResult& result, const BlockGrid& grid, const GrayImage& padded);

/// Same count for a result produced by run_labt(img, ...), re-padding `img`.
long continuity_violations(const LabtResult& result, const GrayImage& img);

/// Mean inclusive width of the ranges of every block that has at least one
/// neighbor constraint. A single-block grid reports the full width 256.
double mean_range_width(const LabtResult& result);

double out_of_range_fraction(const LabtResult& result);

/// One run_labt per square block size, with the rest of `cfg` unchanged.
std::vector<SweepRow> sweep(const GrayImage& img, const LabtConfig& cfg, std::span<const int> block_sizes);

/// Unweighted mean across images, row by row. All inputs must cover the same
/// block sizes in the same order.
std::vector<SweepRow> average_sweeps(std::span<const std::vector<SweepRow>> per_image);

/// Wall-clock seconds spent in `task`, on a monotonic clock.
template <typename Task>
double time_run(Task&& task)
{
    const auto start = std::chrono::steady_clock::now();
    std::forward<Task>(task)();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

MethodReport labt_report(std::string method, const GrayImage& original, const LabtResult& result, double elapsed_s);

// CSV emission: comma separated, '.' decimal point, infinity as "inf",
// missing values as "NA".
std::string format_real(double value, int decimals);
void write_method_csv(std::ostream& out, std::span<const MethodReport> rows);
void write_sweep_csv(std::ostream& out, std::span<const std::string> images,
                     std::span<const std::vector<SweepRow>> per_image);
void write_sweep_average_csv(std::ostream& out, std::span<const SweepRow> rows);

} // namespace labt
