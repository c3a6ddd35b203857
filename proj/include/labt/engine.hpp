#pragma once

#include "labt/image.hpp"
#include "labt/thresholders.hpp"

#include <optional>
#include <span>
#include <vector>

namespace labt {

struct BlockSize {
    int width;
    int height;
    friend bool operator==(const BlockSize&, const BlockSize&) = default;
};

/// Equal-size partition of a padded image into rows x cols blocks.
struct BlockGrid {
    int block_w = 0;
    int block_h = 0;
    int rows = 0;
    int cols = 0;

    int padded_w() const noexcept { return cols * block_w; }
    int padded_h() const noexcept { return rows * block_h; }
    int block_count() const noexcept { return rows * cols; }
    friend bool operator==(const BlockGrid&, const BlockGrid&) = default;
};

/// Closed interval [lo, hi] of admissible thresholds.
struct ThresholdRange {
    int lo = 0;
    int hi = 255;

    bool contains(int t) const noexcept { return lo <= t && t <= hi; }
    int width() const noexcept { return hi - lo + 1; }
    friend bool operator==(const ThresholdRange&, const ThresholdRange&) = default;
};

inline constexpr ThresholdRange kFullRange{0, 255};

/// `strict` additionally excludes thresholds that would flip border pixels
/// equal to the neighbor's threshold; `paper` exempts those pixels.
enum class ContinuityMode { strict, paper };

struct LabtConfig {
    ThresholdMethod method = Otsu{};
    std::optional<BlockSize> block; // nullopt: pick from image variance
    ContinuityMode mode = ContinuityMode::strict;
    bool seed_global = true;        // first block uses the whole-image threshold
};

template <typename T>
class BlockMatrix {
public:
    BlockMatrix(int rows, int cols, T fill = T{})
        : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill)
    {
    }

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    const T& operator()(int m, int n) const noexcept { return cells_[index(m, n)]; }
    T& operator()(int m, int n) noexcept { return cells_[index(m, n)]; }
    std::span<const T> cells() const noexcept { return cells_; }

    friend bool operator==(const BlockMatrix&, const BlockMatrix&) = default;

private:
    std::size_t index(int m, int n) const noexcept
    {
        return static_cast<std::size_t>(m) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(n);
    }

    int rows_;
    int cols_;
    std::vector<T> cells_;
};

struct LabtResult {
    BinaryImage binary;                // cropped to the input size
    BlockGrid grid;
    BlockMatrix<int> ot;               // unconstrained per-block thresholds
    BlockMatrix<int> t;                // thresholds actually applied
    BlockMatrix<ThresholdRange> ranges;// effective range each t was drawn from
    BlockMatrix<std::uint8_t> non_overlap; // 1 where the neighbor ranges were disjoint
    int out_of_range_count = 0;
    int non_overlap_count = 0;

    friend bool operator==(const LabtResult&, const LabtResult&) = default;
};

/// Block size from the override, or from the image's standard deviation:
/// 64 below 32, 32 below 64, 16 otherwise.
BlockGrid choose_grid(const GrayImage& img, std::optional<BlockSize> override_size = std::nullopt);

/// Thresholds that classify `border_line` the same way `t_neighbor` does.
ThresholdRange neighbor_range(int t_neighbor, std::span<const std::uint8_t> border_line, ContinuityMode mode);

/// Intersection of the two ranges; nullopt when they are disjoint. A missing
/// second range (first row or first column) leaves `ur` unchanged.
std::optional<ThresholdRange> effective_range(const ThresholdRange& ur, const std::optional<ThresholdRange>& lr);

/// Number of pixels in `line` that `t` and `t_neighbor` label differently.
int border_disagreements(int t, std::span<const std::uint8_t> line, int t_neighbor);

/// Fallback for disjoint ranges: among the range endpoints and the two
/// neighbor thresholds, the candidate with the fewest border disagreements,
/// then the one closest to `ot`, then the smallest.
int resolve_empty(const ThresholdRange& ur, const ThresholdRange& lr, int ot,
                  std::span<const std::uint8_t> top_border, std::span<const std::uint8_t> left_border,
                  int t_up, int t_left);

int clamp_to_range(int ot, const ThresholdRange& r);

/// Raster-order block thresholding with neighbor continuity constraints.
LabtResult run_labt(const GrayImage& img, const LabtConfig& cfg);

} // namespace labt
