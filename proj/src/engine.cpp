#include "labt/engine.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace labt {

BlockGrid choose_grid(const GrayImage& img, std::optional<BlockSize> override_size)
{
    if (img.width() < 2 || img.height() < 2)
        throw std::invalid_argument("image must be at least 2x2 for block thresholding");

    BlockSize size{};
    if (override_size) {
        if (override_size->width < 2 || override_size->height < 2)
            throw std::invalid_argument("block dimensions must be at least 2x2");
        size = *override_size;
    } else {
        const double sigma = std::sqrt(variance(img));
        const int side = sigma < 32.0 ? 64 : (sigma < 64.0 ? 32 : 16);
        size = {side, side};
    }

    BlockGrid grid;
    grid.block_w = size.width;
    grid.block_h = size.height;
    grid.cols = (img.width() + size.width - 1) / size.width;
    grid.rows = (img.height() + size.height - 1) / size.height;
    return grid;
}

ThresholdRange neighbor_range(int t_neighbor, std::span<const std::uint8_t> border_line, ContinuityMode mode)
{
    // -1 and 256 bracket every threshold from outside the intensity domain.
    int below = -1;
    int above = 256;
    bool has_equal = false;
    for (const int p : border_line) {
        if (p < t_neighbor)
            below = std::max(below, p);
        else if (p > t_neighbor)
            above = std::min(above, p);
        else
            has_equal = true;
    }
    ThresholdRange r{below + 1, std::min(above, 255)};
    if (mode == ContinuityMode::strict && has_equal)
        r.hi = t_neighbor;
    return r;
}

std::optional<ThresholdRange> effective_range(const ThresholdRange& ur, const std::optional<ThresholdRange>& lr)
{
    if (!lr)
        return ur;
    const ThresholdRange r{std::max(ur.lo, lr->lo), std::min(ur.hi, lr->hi)};
    if (r.lo > r.hi)
        return std::nullopt;
    return r;
}

int border_disagreements(int t, std::span<const std::uint8_t> line, int t_neighbor)
{
    // Labels differ exactly for pixels in [min(t, t'), max(t, t')).
    const int lo = std::min(t, t_neighbor);
    const int hi = std::max(t, t_neighbor);
    int n = 0;
    for (const int p : line)
        n += (p >= lo && p < hi) ? 1 : 0;
    return n;
}

int resolve_empty(const ThresholdRange& ur, const ThresholdRange& lr, int ot,
                  std::span<const std::uint8_t> top_border, std::span<const std::uint8_t> left_border,
                  int t_up, int t_left)
{
    const int candidates[] = {ur.lo, ur.hi, lr.lo, lr.hi, t_up, t_left};
    int best = -1;
    int best_cost = std::numeric_limits<int>::max();
    int best_dist = std::numeric_limits<int>::max();
    for (const int c : candidates) {
        const int cost = border_disagreements(c, top_border, t_up) + border_disagreements(c, left_border, t_left);
        const int dist = std::abs(c - ot);
        const bool better = cost < best_cost
                         || (cost == best_cost && dist < best_dist)
                         || (cost == best_cost && dist == best_dist && c < best);
        if (better) {
            best = c;
            best_cost = cost;
            best_dist = dist;
        }
    }
    return best;
}

int clamp_to_range(int ot, const ThresholdRange& r)
{
    return std::clamp(ot, r.lo, r.hi);
}

LabtResult run_labt(const GrayImage& img, const LabtConfig& cfg)
{
    const BlockGrid grid = choose_grid(img, cfg.block);
    const PaddedImage padded = pad_to_multiple(img, grid.block_w, grid.block_h);
    const GrayImage& src = padded.image;

    LabtResult res{
        BinaryImage(img.width(), img.height()),
        grid,
        BlockMatrix<int>(grid.rows, grid.cols),
        BlockMatrix<int>(grid.rows, grid.cols),
        BlockMatrix<ThresholdRange>(grid.rows, grid.cols, kFullRange),
        BlockMatrix<std::uint8_t>(grid.rows, grid.cols),
    };

    const int seed = cfg.seed_global ? select_threshold(cfg.method, histogram(src)) : -1;

    BinaryImage full(src.width(), src.height());
    std::vector<std::uint8_t> left_column(static_cast<std::size_t>(grid.block_h));

    for (int m = 0; m < grid.rows; ++m) {
        for (int n = 0; n < grid.cols; ++n) {
            const int x0 = n * grid.block_w;
            const int y0 = m * grid.block_h;
            const int ot = select_threshold(cfg.method, histogram(src, x0, y0, grid.block_w, grid.block_h));
            res.ot(m, n) = ot;

            const auto top_row = src.row(y0).subspan(static_cast<std::size_t>(x0), static_cast<std::size_t>(grid.block_w));
            for (int r = 0; r < grid.block_h; ++r)
                left_column[static_cast<std::size_t>(r)] = src(y0 + r, x0);

            int t = ot;
            ThresholdRange range = kFullRange;
            if (m == 0 && n == 0) {
                if (cfg.seed_global)
                    t = seed;
            } else {
                std::optional<ThresholdRange> ur;
                std::optional<ThresholdRange> lr;
                if (m > 0)
                    ur = neighbor_range(res.t(m - 1, n), top_row, cfg.mode);
                if (n > 0)
                    lr = neighbor_range(res.t(m, n - 1), left_column, cfg.mode);
                const auto eff = ur ? effective_range(*ur, lr) : lr;
                if (eff) {
                    range = *eff;
                    t = clamp_to_range(ot, range);
                } else {
                    t = resolve_empty(*ur, *lr, ot, top_row, left_column, res.t(m - 1, n), res.t(m, n - 1));
                    // The applied threshold is the only admissible one left.
                    range = {t, t};
                    res.non_overlap(m, n) = 1;
                    ++res.non_overlap_count;
                }
                if (!range.contains(ot))
                    ++res.out_of_range_count;
            }
            res.t(m, n) = t;
            res.ranges(m, n) = range;

            for (int r = y0; r < y0 + grid.block_h; ++r) {
                auto in = src.row(r);
                auto out = full.row(r);
                for (int c = x0; c < x0 + grid.block_w; ++c)
                    out[static_cast<std::size_t>(c)] = in[static_cast<std::size_t>(c)] >= t ? Label::foreground : Label::background;
            }
        }
    }

    res.binary = crop(full, img.width(), img.height());
    return res;
}

} // namespace labt
