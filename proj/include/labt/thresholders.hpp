#pragma once

#include "labt/image.hpp"

#include <string>
#include <variant>

namespace labt {

/// Between-class-variance maximization over splits {< t | >= t}.
struct Otsu {};

/// Area division of the cumulative histogram: the threshold sits just above
/// the smallest intensity whose CDF reaches rho * total.
class Adcdf {
public:
    explicit Adcdf(double rho = 0.5);
    double rho() const noexcept { return rho_; }

private:
    double rho_;
};

/// Block-wise mean-plus-k-sigma rule.
struct MeanK {
    double k = -0.2;
};

using ThresholdMethod = std::variant<Otsu, Adcdf, MeanK>;

std::string method_name(const ThresholdMethod& method);

struct RegionStats {
    double mean = 0.0;
    double stddev = 0.0; // population
};

RegionStats region_stats(const Histogram& hist);

/// Threshold in [0, 255] for the pixels summarized by `hist`. A region with a
/// single intensity value returns that value. Throws std::invalid_argument for
/// an empty histogram.
int select_threshold(const ThresholdMethod& method, const Histogram& hist, const RegionStats& stats);
int select_threshold(const ThresholdMethod& method, const Histogram& hist);

int otsu_threshold(const Histogram& hist);
int adcdf_threshold(const Histogram& hist, double rho);
int mean_k_threshold(const RegionStats& stats, double k);

/// p >= t is foreground.
BinaryImage binarize_global(const GrayImage& img, int t);

struct NiblackParams {
    int window = 15;
    double k = -0.2;
};

/// Niblack's local threshold from the window's pixel count, sum and sum of
/// squares. Shared by the integral-image path and any direct evaluation so
/// both classify identically.
double niblack_local_threshold(std::uint64_t count, std::uint64_t sum, std::uint64_t sum_sq, double k);

/// Per-pixel mean + k * stddev over a window centred on the pixel and clipped
/// at the image border. Window sums come from integral images.
BinaryImage niblack_binarize(const GrayImage& img, const NiblackParams& params);

} // namespace labt
