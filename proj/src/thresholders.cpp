#include "labt/thresholders.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace labt {

namespace {

__extension__ using u128 = unsigned __int128;

// Otsu scores are (n0*S1 - n1*S0)^2 / (n0*n1), i.e. N^2 times the
// between-class variance. Numerators need total <= 2^28 to fit in 128 bits.
constexpr std::uint64_t kMaxOtsuPixels = std::uint64_t{1} << 28;

struct Score {
    u128 num = 0;
    u128 den = 1;
};

// Exact a/b < c/d without forming a*d (which can exceed 128 bits).
bool less_than(Score lhs, Score rhs)
{
    const u128 q1 = lhs.num / lhs.den;
    const u128 q2 = rhs.num / rhs.den;
    if (q1 != q2)
        return q1 < q2;
    // Remainders are below their denominators (< 2^54), so the products fit.
    const u128 r1 = lhs.num % lhs.den;
    const u128 r2 = rhs.num % rhs.den;
    return r1 * rhs.den < r2 * lhs.den;
}

int single_value(const Histogram& hist)
{
    for (int g = 0; g < 256; ++g) {
        if (hist.counts[g] == hist.total)
            return g;
        if (hist.counts[g] != 0)
            return -1;
    }
    return -1;
}

void require_nonempty(const Histogram& hist)
{
    if (hist.total == 0)
        throw std::invalid_argument("cannot select a threshold for an empty region");
}

} // namespace

Adcdf::Adcdf(double rho) : rho_(rho)
{
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("ADCDF area fraction must lie in (0, 1)");
}

std::string method_name(const ThresholdMethod& method)
{
    struct Visitor {
        std::string operator()(const Otsu&) const { return "otsu"; }
        std::string operator()(const Adcdf&) const { return "adcdf"; }
        std::string operator()(const MeanK&) const { return "meank"; }
    };
    return std::visit(Visitor{}, method);
}

RegionStats region_stats(const Histogram& hist)
{
    require_nonempty(hist);
    std::uint64_t sum = 0;
    std::uint64_t sum_sq = 0;
    for (std::uint64_t g = 0; g < 256; ++g) {
        sum += g * hist.counts[g];
        sum_sq += g * g * hist.counts[g];
    }
    const double n = static_cast<double>(hist.total);
    const u128 spread = static_cast<u128>(hist.total) * sum_sq - static_cast<u128>(sum) * sum;
    return {static_cast<double>(sum) / n, std::sqrt(static_cast<double>(spread)) / n};
}

int otsu_threshold(const Histogram& hist)
{
    require_nonempty(hist);
    if (const int v = single_value(hist); v >= 0)
        return v;
    if (hist.total > kMaxOtsuPixels)
        throw std::invalid_argument("region too large for exact Otsu scoring");

    std::uint64_t total_sum = 0;
    for (std::uint64_t g = 0; g < 256; ++g)
        total_sum += g * hist.counts[g];

    // Candidate t puts intensities < t in the low class. t = 0 leaves the low
    // class empty (score 0), which is also the initial best.
    int best_t = 0;
    Score best{0, 1};
    std::uint64_t n0 = 0;
    std::uint64_t s0 = 0;
    for (int t = 1; t < 256; ++t) {
        n0 += hist.counts[t - 1];
        s0 += static_cast<std::uint64_t>(t - 1) * hist.counts[t - 1];
        const std::uint64_t n1 = hist.total - n0;
        if (n0 == 0 || n1 == 0)
            continue;
        const std::uint64_t s1 = total_sum - s0;
        // Class means are ordered (mu0 < mu1), so the difference is non-negative.
        const u128 diff = static_cast<u128>(n0) * s1 - static_cast<u128>(n1) * s0;
        const Score score{diff * diff, static_cast<u128>(n0) * n1};
        if (less_than(best, score)) {
            best = score;
            best_t = t;
        }
    }
    return best_t;
}

int adcdf_threshold(const Histogram& hist, double rho)
{
    require_nonempty(hist);
    if (const int v = single_value(hist); v >= 0)
        return v;
    const double target = rho * static_cast<double>(hist.total);
    std::uint64_t cdf = 0;
    for (int g = 0; g < 256; ++g) {
        cdf += hist.counts[g];
        if (static_cast<double>(cdf) >= target)
            return std::min(g + 1, 255);
    }
    return 255;
}

int mean_k_threshold(const RegionStats& stats, double k)
{
    const double t = std::round(stats.mean + k * stats.stddev);
    return static_cast<int>(std::clamp(t, 0.0, 255.0));
}

int select_threshold(const ThresholdMethod& method, const Histogram& hist, const RegionStats& stats)
{
    require_nonempty(hist);
    if (const int v = single_value(hist); v >= 0)
        return v;
    struct Visitor {
        const Histogram& hist;
        const RegionStats& stats;
        int operator()(const Otsu&) const { return otsu_threshold(hist); }
        int operator()(const Adcdf& m) const { return adcdf_threshold(hist, m.rho()); }
        int operator()(const MeanK& m) const { return mean_k_threshold(stats, m.k); }
    };
    return std::visit(Visitor{hist, stats}, method);
}

int select_threshold(const ThresholdMethod& method, const Histogram& hist)
{
    return select_threshold(method, hist, region_stats(hist));
}

BinaryImage binarize_global(const GrayImage& img, int t)
{
    if (t < 0 || t > 255)
        throw std::invalid_argument("threshold must lie in [0, 255]");
    BinaryImage out(img.width(), img.height());
    std::transform(img.pixels().begin(), img.pixels().end(), out.pixels().begin(),
                   [t](std::uint8_t p) { return p >= t ? Label::foreground : Label::background; });
    return out;
}

double niblack_local_threshold(std::uint64_t count, std::uint64_t sum, std::uint64_t sum_sq, double k)
{
    const double n = static_cast<double>(count);
    const u128 spread = static_cast<u128>(count) * sum_sq - static_cast<u128>(sum) * sum;
    const double mean = static_cast<double>(sum) / n;
    const double stddev = std::sqrt(static_cast<double>(spread)) / n;
    return mean + k * stddev;
}

BinaryImage niblack_binarize(const GrayImage& img, const NiblackParams& params)
{
    if (params.window < 3 || params.window % 2 == 0)
        throw std::invalid_argument("Niblack window must be odd and at least 3");

    const int w = img.width();
    const int h = img.height();
    const std::size_t stride = static_cast<std::size_t>(w) + 1;
    std::vector<std::uint64_t> sum(stride * (static_cast<std::size_t>(h) + 1), 0);
    std::vector<std::uint64_t> sum_sq(sum.size(), 0);
    for (int r = 0; r < h; ++r) {
        std::uint64_t row_sum = 0;
        std::uint64_t row_sq = 0;
        auto src = img.row(r);
        for (int c = 0; c < w; ++c) {
            const std::uint64_t p = src[static_cast<std::size_t>(c)];
            row_sum += p;
            row_sq += p * p;
            const std::size_t idx = (static_cast<std::size_t>(r) + 1) * stride + static_cast<std::size_t>(c) + 1;
            sum[idx] = sum[idx - stride] + row_sum;
            sum_sq[idx] = sum_sq[idx - stride] + row_sq;
        }
    }

    auto box = [stride](const std::vector<std::uint64_t>& ii, int top, int left, int bottom, int right) {
        // Half-open rectangle [top, bottom) x [left, right).
        const auto at = [&](int r, int c) {
            return ii[static_cast<std::size_t>(r) * stride + static_cast<std::size_t>(c)];
        };
        return at(bottom, right) - at(top, right) - at(bottom, left) + at(top, left);
    };

    const int radius = params.window / 2;
    BinaryImage out(w, h);
    for (int r = 0; r < h; ++r) {
        const int top = std::max(0, r - radius);
        const int bottom = std::min(h, r + radius + 1);
        for (int c = 0; c < w; ++c) {
            const int left = std::max(0, c - radius);
            const int right = std::min(w, c + radius + 1);
            const auto count = static_cast<std::uint64_t>(bottom - top) * static_cast<std::uint64_t>(right - left);
            const double t = niblack_local_threshold(count, box(sum, top, left, bottom, right),
                                                     box(sum_sq, top, left, bottom, right), params.k);
            out(r, c) = img(r, c) >= t ? Label::foreground : Label::background;
        }
    }
    return out;
}

} // namespace labt
