#pragma once

#include "labt/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace labt::testing {

struct NamedImage {
    std::string name;
    GrayImage image;
    bool flip_symmetric = false; // invariant under both vertical and horizontal flips
};

inline GrayImage random_image(int w, int h, std::uint32_t seed, int lo = 0, int hi = 255)
{
    std::mt19937 rng(seed);
    GrayImage img(w, h);
    const auto span = static_cast<std::uint32_t>(hi - lo + 1);
    for (auto& p : img.pixels())
        p = static_cast<std::uint8_t>(lo + static_cast<int>(rng() % span));
    return img;
}

template <typename F>
GrayImage generate(int w, int h, F f)
{
    GrayImage img(w, h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            img(r, c) = static_cast<std::uint8_t>(std::clamp(f(r, c), 0, 255));
    return img;
}

/// Gradients, noise, checkerboards, constants and a few structured scenes.
/// Sizes are deliberately not all multiples of the block sizes.
inline std::vector<NamedImage> synthetic_corpus()
{
    std::vector<NamedImage> out;
    out.push_back({"constant_0", GrayImage(256, 256, 0), true});
    out.push_back({"constant_128", GrayImage(200, 180, 128), true});
    out.push_back({"constant_255", GrayImage(256, 256, 255), true});
    out.push_back({"gradient_horizontal", generate(256, 256, [](int, int c) { return c; })});
    out.push_back({"gradient_vertical", generate(300, 220, [](int r, int) { return r * 255 / 219; })});
    out.push_back({"gradient_diagonal", generate(256, 256, [](int r, int c) { return (r + c) / 2; })});
    out.push_back({"gradient_radial", generate(257, 257, [](int r, int c) {
                       const double d = std::hypot(r - 128.0, c - 128.0);
                       return static_cast<int>(255.0 - d * 255.0 / 181.0);
                   }), true});
    out.push_back({"noise_uniform", random_image(256, 256, 1)});
    out.push_back({"noise_narrow", random_image(240, 200, 2, 100, 140)});
    {
        std::mt19937 rng(3);
        std::normal_distribution<double> noise(0.0, 12.0);
        out.push_back({"noise_on_gradient", generate(256, 256, [&](int, int c) {
                           return c / 2 + 64 + static_cast<int>(std::lround(noise(rng)));
                       })});
    }
    out.push_back({"checker_8", generate(264, 264, [](int r, int c) { return ((r / 8 + c / 8) % 2) ? 220 : 30; }),
                   true});
    out.push_back({"checker_13", generate(273, 273, [](int r, int c) { return ((r / 13 + c / 13) % 2) ? 200 : 60; }),
                   true});
    out.push_back({"checker_37", generate(250, 190, [](int r, int c) { return ((r / 37 + c / 37) % 2) ? 180 : 90; })});
    out.push_back({"bars_with_shading", generate(256, 256, [](int r, int c) {
                       const int base = 40 + r / 2;
                       return (c / 16) % 3 == 0 ? base + 90 : base;
                   })});
    out.push_back({"disks", generate(256, 256, [](int r, int c) {
                       const int v = ((r % 64) - 32) * ((r % 64) - 32) + ((c % 64) - 32) * ((c % 64) - 32);
                       return v < 400 ? 200 : 50 + (r + c) / 8;
                   })});
    return out;
}

inline std::vector<NamedImage> natural_corpus(const std::filesystem::path& dir)
{
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".pgm")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<NamedImage> out;
    for (const auto& f : files)
        out.push_back({f.stem().string(), read_pgm_file(f)});
    return out;
}

} // namespace labt::testing
