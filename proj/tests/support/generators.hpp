#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "texlbp/image.hpp"

namespace texgen {

// Uniform random raster; pixel values in [0, max_value].
texlbp::GrayImage random_image(std::mt19937_64& rng, int min_size, int max_size,
                               int max_value = 255);

// `levels` distinct values from [0,255], ascending: a random strictly
// increasing intensity map for images whose pixels stay below `levels`.
std::vector<std::uint8_t> increasing_map(std::mt19937_64& rng, int levels);

texlbp::GrayImage apply_map(const texlbp::GrayImage& img,
                            const std::vector<std::uint8_t>& f);

// 90 degrees clockwise.
texlbp::GrayImage rotate90(const texlbp::GrayImage& img);

// Four separable texture families: near-flat gray (sigma 2 noise), vertical
// stripes of period 4, period-4 checkerboard, uniform noise. Per-image
// levels and phases are randomized; everything derives from the seed.
std::vector<texlbp::LabeledImage> synthetic_textures(int per_class, int size,
                                                     std::uint64_t seed);

}  // namespace texgen
