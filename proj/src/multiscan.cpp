#include "labt/multiscan.hpp"

#include <array>
#include <future>
#include <stdexcept>

namespace labt {

BinaryImage or_masks(std::span<const BinaryImage> masks)
{
    if (masks.empty())
        throw std::invalid_argument("or_masks needs at least one mask");
    BinaryImage out = masks.front();
    for (const auto& m : masks.subspan(1)) {
        if (m.width() != out.width() || m.height() != out.height())
            throw std::invalid_argument("or_masks: dimension mismatch");
        auto dst = out.pixels();
        auto src = m.pixels();
        for (std::size_t i = 0; i < dst.size(); ++i)
            if (src[i] == Label::foreground)
                dst[i] = Label::foreground;
    }
    return out;
}

template <typename Pixel>
static Image<Pixel> orient_impl(const Image<Pixel>& img, ScanOrientation o)
{
    switch (o) {
    case ScanOrientation::vertical_flip: return flip_vertical(img);
    case ScanOrientation::horizontal_flip: return flip_horizontal(img);
    case ScanOrientation::identity: break;
    }
    return img;
}

GrayImage orient(const GrayImage& img, ScanOrientation o) { return orient_impl(img, o); }
BinaryImage orient(const BinaryImage& img, ScanOrientation o) { return orient_impl(img, o); }

MultiscanResult run_multiscan(const GrayImage& img, const LabtConfig& cfg)
{
    constexpr std::array orientations{ScanOrientation::identity, ScanOrientation::vertical_flip,
                                      ScanOrientation::horizontal_flip};

    // Scans are independent; each flip is its own inverse.
    std::vector<std::future<LabtResult>> pending;
    for (const auto o : orientations)
        pending.push_back(std::async(std::launch::async, [&img, &cfg, o] { return run_labt(orient(img, o), cfg); }));

    MultiscanResult res{BinaryImage(img.width(), img.height()), {}, {}};
    for (std::size_t i = 0; i < orientations.size(); ++i) {
        res.runs.push_back(pending[i].get());
        res.per_scan.push_back(orient(res.runs.back().binary, orientations[i]));
    }
    res.combined = or_masks(res.per_scan);
    return res;
}

} // namespace labt
