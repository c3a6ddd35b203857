#pragma once

#include "labt/engine.hpp"

#include <span>
#include <vector>

namespace labt {

enum class ScanOrientation { identity, vertical_flip, horizontal_flip };

struct MultiscanResult {
    BinaryImage combined;
    /// Identity, vertical-flip and horizontal-flip scans, each flipped back to
    /// the input orientation.
    std::vector<BinaryImage> per_scan;
    /// The underlying runs, in the orientation each scan was performed in.
    std::vector<LabtResult> runs;
};

/// Pixelwise foreground union. Throws std::invalid_argument on an empty
/// sequence or mismatched dimensions.
BinaryImage or_masks(std::span<const BinaryImage> masks);

GrayImage orient(const GrayImage& img, ScanOrientation o);
BinaryImage orient(const BinaryImage& img, ScanOrientation o);

/// Runs LABT on the image as given, flipped upside down and flipped left to
/// right, undoes each flip and ORs the three masks.
MultiscanResult run_multiscan(const GrayImage& img, const LabtConfig& cfg);

} // namespace labt
