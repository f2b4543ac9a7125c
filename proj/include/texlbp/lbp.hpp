#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "texlbp/image.hpp"

namespace texlbp {

enum class LbpVariant { u2, riu2 };

std::string to_string(LbpVariant v);
LbpVariant parse_variant(std::string_view text);

// One circular neighborhood: `points` samples on a circle of radius
// `radius` around the center pixel, mapped with the given code mapping.
struct LbpConfig {
    int points = 8;
    double radius = 1.0;
    LbpVariant variant = LbpVariant::riu2;

    bool operator==(const LbpConfig&) const = default;
};

// "8:1:riu2" <-> LbpConfig
std::string to_string(const LbpConfig& cfg);
LbpConfig parse_lbp_config(std::string_view text);

// Throws std::invalid_argument unless 4 <= points <= 32 and radius > 0.
void validate_config(const LbpConfig& cfg);

struct Histogram {
    std::vector<double> bins;
    LbpConfig config;
    bool normalized = false;
};

// Per-pixel mapped bin indices over the interior region of an image.
struct LbpMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint32_t> codes;
};

// Sampling geometry.
//
// Neighbor k of center (cx, cy) sits at angle 2*pi*k/points counterclockwise
// from the +x axis, in image coordinates with y growing downward:
//
//   (cx + radius*cos(angle), cy - radius*sin(angle))
//
// Displacements are quantized to the 2^-20 grid and snapped to integers
// within 1e-6, so the fractional parts (and hence all bilinear weights,
// which are products of two fractions) are exact dyadic rationals and the
// offset table is exactly symmetric under 90-degree rotation when 4 divides
// points. Interpolation then never rounds: results are exact.
struct NeighborOffset {
    int base_x = 0;      // floor of the x displacement
    int base_y = 0;      // floor of the y displacement
    double frac_x = 0.0; // in [0,1), multiple of 2^-20, 0 or > 1e-6
    double frac_y = 0.0;
};

std::vector<NeighborOffset> neighbor_offsets(int points, double radius);

// Number of 0-1/1-0 changes in the circular bit sequence b0..b(points-1),b0.
int transitions(std::uint64_t code, int points);

// Rotation-invariant uniform mapping: popcount for codes with at most two
// transitions, points+1 otherwise. points+2 bins total.
std::size_t map_riu2(std::uint64_t code, int points);

// Uniform-pattern mapping. Uniform codes get sequential bins in ascending
// raw-code order; every non-uniform code shares the last bin. Dense array
// for small points, sorted-list lookup above that (a dense table for P=32
// would need 2^32 entries).
class U2Table {
public:
    U2Table() = default;
    explicit U2Table(int points);

    int points() const { return points_; }
    std::size_t bin_count() const { return uniform_codes_.size() + 1; }
    std::size_t bin(std::uint64_t code) const;

private:
    int points_ = 0;
    std::vector<std::uint64_t> uniform_codes_;  // ascending
    std::vector<std::uint32_t> dense_;          // filled when points_ <= 16
};

U2Table build_u2_table(int points);

// riu2: points+2. u2: points*(points-1)+3.
std::size_t bin_count(const LbpConfig& cfg);

// Precomputed offsets + code mapping for one configuration. Build once,
// reuse across images; const and safe to share between threads.
class LbpOperator {
public:
    explicit LbpOperator(const LbpConfig& cfg);

    const LbpConfig& config() const { return cfg_; }
    std::size_t bins() const;
    int margin() const { return margin_; }

    // Bilinear intensity of neighbor k; exact pixel value when the sample
    // point is within 1e-6 of the integer grid. Throws std::out_of_range
    // when the sample footprint leaves the image.
    double sample(const GrayImage& img, int cx, int cy, int k) const;

    // Raw code: bit k (weight 2^k) is set when the interpolated
    // neighbor-vs-center indicator is >= 0.5; at exact grid positions this
    // is simply neighbor >= center. Ties map to 1.
    std::uint64_t code(const GrayImage& img, int cx, int cy) const;

    std::size_t map_code(std::uint64_t code) const;
    std::size_t bin(const GrayImage& img, int cx, int cy) const;

    // Raw-count histogram over every center whose full neighborhood fits
    // (interior margin = ceil(radius)). Throws std::invalid_argument when
    // the image has no interior pixel.
    Histogram histogram(const GrayImage& img) const;

    // Per-interior-pixel mapped bin indices.
    LbpMap map(const GrayImage& img) const;

private:
    void check_interior(const GrayImage& img) const;

    LbpConfig cfg_;
    int margin_ = 0;
    std::vector<NeighborOffset> offsets_;
    U2Table u2_;
};

// One-shot conveniences over LbpOperator.
double sample_neighbor(const GrayImage& img, int cx, int cy, int k, const LbpConfig& cfg);
std::uint64_t lbp_code(const GrayImage& img, int cx, int cy, const LbpConfig& cfg);
Histogram lbp_histogram(const GrayImage& img, const LbpConfig& cfg);
LbpMap lbp_map(const GrayImage& img, const LbpConfig& cfg);

// Generic bilinear lookup with the same 1e-6 integer snap.
double bilinear_sample(const GrayImage& img, double x, double y);

// Linear rescale of bin indices to [0,255] for PGM export.
GrayImage map_to_gray(const LbpMap& map, std::size_t bins);

}  // namespace texlbp
