#pragma once

#include <cstdint>
#include <vector>

#include "texlbp/image.hpp"

// Brute-force per-pixel reference used to validate the histogram pipeline.
// Deliberately independent of texlbp/lbp.cpp: displacements come straight
// from the angle definition (quantized to the 2^-20 grid, snapped to
// integers within 1e-6), the neighbor>=center indicator is bilinearly
// interpolated per corner, transitions and popcounts are counted by direct
// bit loops, and uniform-code ranks are found by enumerating circular runs
// per pixel instead of any precomputed table.
namespace texref {

int ref_transitions(std::uint64_t code, int points);
std::size_t ref_u2_bin(std::uint64_t code, int points);

std::vector<double> histogram(const texlbp::GrayImage& img, int points,
                              double radius, bool rotation_invariant);

}  // namespace texref
