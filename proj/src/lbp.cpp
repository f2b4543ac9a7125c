#include "texlbp/lbp.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace texlbp {

namespace {

constexpr double kOffsetGrid = 1048576.0;  // 2^20
constexpr double kSnapTolerance = 1e-6;

double quantize_offset(double x) {
    double q = std::nearbyint(x * kOffsetGrid) / kOffsetGrid;
    const double r = std::nearbyint(q);
    if (std::abs(q - r) <= kSnapTolerance) q = r;
    return q;
}

std::uint64_t code_mask(int points) {
    return points >= 64 ? ~0ull : ((1ull << points) - 1);
}

std::uint64_t rotate_code(std::uint64_t code, int shift, int points) {
    shift %= points;
    if (shift == 0) return code;
    const std::uint64_t mask = code_mask(points);
    return ((code << shift) | (code >> (points - shift))) & mask;
}

}  // namespace

std::string to_string(LbpVariant v) {
    return v == LbpVariant::u2 ? "u2" : "riu2";
}

LbpVariant parse_variant(std::string_view text) {
    if (text == "u2") return LbpVariant::u2;
    if (text == "riu2") return LbpVariant::riu2;
    throw std::invalid_argument("unknown LBP variant: '" + std::string(text) + "'");
}

std::string to_string(const LbpConfig& cfg) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, cfg.radius);
    return std::to_string(cfg.points) + ":" + std::string(buf, res.ptr) + ":" +
           to_string(cfg.variant);
}

LbpConfig parse_lbp_config(std::string_view text) {
    const auto first = text.find(':');
    const auto second = text.find(':', first == std::string_view::npos ? first : first + 1);
    if (first == std::string_view::npos || second == std::string_view::npos)
        throw std::invalid_argument("expected P:R:variant, got '" + std::string(text) + "'");
    LbpConfig cfg;
    const auto p_part = text.substr(0, first);
    const auto r_part = text.substr(first + 1, second - first - 1);
    const auto v_part = text.substr(second + 1);
    auto pr = std::from_chars(p_part.data(), p_part.data() + p_part.size(), cfg.points);
    if (pr.ec != std::errc{} || pr.ptr != p_part.data() + p_part.size())
        throw std::invalid_argument("bad point count in '" + std::string(text) + "'");
    auto rr = std::from_chars(r_part.data(), r_part.data() + r_part.size(), cfg.radius);
    if (rr.ec != std::errc{} || rr.ptr != r_part.data() + r_part.size())
        throw std::invalid_argument("bad radius in '" + std::string(text) + "'");
    cfg.variant = parse_variant(v_part);
    validate_config(cfg);
    return cfg;
}

void validate_config(const LbpConfig& cfg) {
    if (cfg.points < 4 || cfg.points > 32)
        throw std::invalid_argument("point count must be in [4,32], got " +
                                    std::to_string(cfg.points));
    if (!(cfg.radius > 0.0))
        throw std::invalid_argument("radius must be positive");
}

std::vector<NeighborOffset> neighbor_offsets(int points, double radius) {
    if (points < 4) throw std::invalid_argument("need at least 4 sampling points");
    if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
    std::vector<NeighborOffset> out(points);
    for (int k = 0; k < points; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / points;
        const double dx = quantize_offset(radius * std::cos(angle));
        const double dy = quantize_offset(-radius * std::sin(angle));
        NeighborOffset& o = out[k];
        o.base_x = static_cast<int>(std::floor(dx));
        o.base_y = static_cast<int>(std::floor(dy));
        o.frac_x = dx - o.base_x;  // exact: both are multiples of 2^-20
        o.frac_y = dy - o.base_y;
    }
    return out;
}

int transitions(std::uint64_t code, int points) {
    const std::uint64_t mask = code_mask(points);
    code &= mask;
    const std::uint64_t rotated = rotate_code(code, 1, points);
    return std::popcount(code ^ rotated);
}

std::size_t map_riu2(std::uint64_t code, int points) {
    if (transitions(code, points) <= 2)
        return static_cast<std::size_t>(std::popcount(code & code_mask(points)));
    return static_cast<std::size_t>(points) + 1;
}

U2Table::U2Table(int points) : points_(points) {
    if (points < 4 || points > 32)
        throw std::invalid_argument("u2 table supports 4..32 points, got " +
                                    std::to_string(points));
    uniform_codes_.reserve(static_cast<std::size_t>(points) * (points - 1) + 2);
    uniform_codes_.push_back(0);
    for (int ones = 1; ones < points; ++ones) {
        const std::uint64_t run = (1ull << ones) - 1;
        for (int shift = 0; shift < points; ++shift)
            uniform_codes_.push_back(rotate_code(run, shift, points));
    }
    uniform_codes_.push_back(code_mask(points));
    std::sort(uniform_codes_.begin(), uniform_codes_.end());

    if (points <= 16) {
        const std::size_t size = 1ull << points;
        dense_.assign(size, static_cast<std::uint32_t>(uniform_codes_.size()));
        for (std::size_t i = 0; i < uniform_codes_.size(); ++i)
            dense_[uniform_codes_[i]] = static_cast<std::uint32_t>(i);
    }
}

std::size_t U2Table::bin(std::uint64_t code) const {
    if (!dense_.empty()) return dense_[code];
    if (transitions(code, points_) > 2) return uniform_codes_.size();
    const auto it = std::lower_bound(uniform_codes_.begin(), uniform_codes_.end(), code);
    return static_cast<std::size_t>(it - uniform_codes_.begin());
}

U2Table build_u2_table(int points) {
    return U2Table(points);
}

std::size_t bin_count(const LbpConfig& cfg) {
    validate_config(cfg);
    if (cfg.variant == LbpVariant::riu2)
        return static_cast<std::size_t>(cfg.points) + 2;
    return static_cast<std::size_t>(cfg.points) * (cfg.points - 1) + 3;
}

LbpOperator::LbpOperator(const LbpConfig& cfg) : cfg_(cfg) {
    validate_config(cfg);
    margin_ = static_cast<int>(std::ceil(cfg.radius));
    offsets_ = neighbor_offsets(cfg.points, cfg.radius);
    if (cfg.variant == LbpVariant::u2) u2_ = U2Table(cfg.points);
}

std::size_t LbpOperator::bins() const {
    return cfg_.variant == LbpVariant::u2 ? u2_.bin_count()
                                          : static_cast<std::size_t>(cfg_.points) + 2;
}

namespace {

// Footprint corners with zero weight are never touched, so exactly-on-grid
// samples degenerate to plain pixel reads.
struct Footprint {
    int x0, y0;
    double wx[2];
    double wy[2];
};

Footprint footprint(const NeighborOffset& o, int cx, int cy) {
    return {cx + o.base_x, cy + o.base_y,
            {1.0 - o.frac_x, o.frac_x},
            {1.0 - o.frac_y, o.frac_y}};
}

void check_footprint(const GrayImage& img, const Footprint& f) {
    for (int j = 0; j < 2; ++j) {
        if (f.wy[j] == 0.0) continue;
        for (int i = 0; i < 2; ++i) {
            if (f.wx[i] == 0.0) continue;
            if (!img.in_bounds(f.x0 + i, f.y0 + j))
                throw std::out_of_range("sample point out of image bounds");
        }
    }
}

}  // namespace

double LbpOperator::sample(const GrayImage& img, int cx, int cy, int k) const {
    if (k < 0 || k >= cfg_.points)
        throw std::out_of_range("neighbor index out of range");
    const Footprint f = footprint(offsets_[k], cx, cy);
    check_footprint(img, f);
    double acc = 0.0;
    for (int j = 0; j < 2; ++j) {
        if (f.wy[j] == 0.0) continue;
        for (int i = 0; i < 2; ++i) {
            if (f.wx[i] == 0.0) continue;
            acc += f.wx[i] * f.wy[j] * img.at(f.x0 + i, f.y0 + j);
        }
    }
    return acc;
}

std::uint64_t LbpOperator::code(const GrayImage& img, int cx, int cy) const {
    if (!img.in_bounds(cx, cy))
        throw std::out_of_range("center pixel out of image bounds");
    const std::uint8_t center = img.at(cx, cy);
    std::uint64_t code = 0;
    for (int k = 0; k < cfg_.points; ++k) {
        const Footprint f = footprint(offsets_[k], cx, cy);
        check_footprint(img, f);
        // interpolate the neighbor>=center indicator; all weights are exact
        // dyadics, so the comparison with 1/2 never sees rounding noise
        double acc = 0.0;
        for (int j = 0; j < 2; ++j) {
            if (f.wy[j] == 0.0) continue;
            for (int i = 0; i < 2; ++i) {
                if (f.wx[i] == 0.0) continue;
                if (img.at(f.x0 + i, f.y0 + j) >= center) acc += f.wx[i] * f.wy[j];
            }
        }
        if (acc >= 0.5) code |= 1ull << k;
    }
    return code;
}

std::size_t LbpOperator::map_code(std::uint64_t code) const {
    return cfg_.variant == LbpVariant::u2 ? u2_.bin(code) : map_riu2(code, cfg_.points);
}

std::size_t LbpOperator::bin(const GrayImage& img, int cx, int cy) const {
    return map_code(code(img, cx, cy));
}

void LbpOperator::check_interior(const GrayImage& img) const {
    if (img.width <= 2 * margin_ || img.height <= 2 * margin_)
        throw std::invalid_argument(
            "image " + std::to_string(img.width) + "x" + std::to_string(img.height) +
            " too small for radius " + std::to_string(cfg_.radius));
}

Histogram LbpOperator::histogram(const GrayImage& img) const {
    check_interior(img);
    Histogram h;
    h.config = cfg_;
    h.bins.assign(bins(), 0.0);
    for (int cy = margin_; cy < img.height - margin_; ++cy)
        for (int cx = margin_; cx < img.width - margin_; ++cx)
            h.bins[bin(img, cx, cy)] += 1.0;
    return h;
}

LbpMap LbpOperator::map(const GrayImage& img) const {
    check_interior(img);
    LbpMap m;
    m.width = img.width - 2 * margin_;
    m.height = img.height - 2 * margin_;
    m.codes.resize(static_cast<std::size_t>(m.width) * m.height);
    for (int cy = margin_; cy < img.height - margin_; ++cy)
        for (int cx = margin_; cx < img.width - margin_; ++cx)
            m.codes[static_cast<std::size_t>(cy - margin_) * m.width + (cx - margin_)] =
                static_cast<std::uint32_t>(bin(img, cx, cy));
    return m;
}

double sample_neighbor(const GrayImage& img, int cx, int cy, int k, const LbpConfig& cfg) {
    return LbpOperator(cfg).sample(img, cx, cy, k);
}

std::uint64_t lbp_code(const GrayImage& img, int cx, int cy, const LbpConfig& cfg) {
    return LbpOperator(cfg).code(img, cx, cy);
}

Histogram lbp_histogram(const GrayImage& img, const LbpConfig& cfg) {
    return LbpOperator(cfg).histogram(img);
}

LbpMap lbp_map(const GrayImage& img, const LbpConfig& cfg) {
    return LbpOperator(cfg).map(img);
}

double bilinear_sample(const GrayImage& img, double x, double y) {
    const double rx = std::nearbyint(x);
    const double ry = std::nearbyint(y);
    if (std::abs(x - rx) <= kSnapTolerance) x = rx;
    if (std::abs(y - ry) <= kSnapTolerance) y = ry;
    const double fx = x - std::floor(x);
    const double fy = y - std::floor(y);
    const NeighborOffset o{static_cast<int>(std::floor(x)), static_cast<int>(std::floor(y)),
                           fx, fy};
    const Footprint f = footprint(o, 0, 0);
    check_footprint(img, f);
    double acc = 0.0;
    for (int j = 0; j < 2; ++j) {
        if (f.wy[j] == 0.0) continue;
        for (int i = 0; i < 2; ++i) {
            if (f.wx[i] == 0.0) continue;
            acc += f.wx[i] * f.wy[j] * img.at(f.x0 + i, f.y0 + j);
        }
    }
    return acc;
}

GrayImage map_to_gray(const LbpMap& map, std::size_t bins) {
    if (bins < 2) throw std::invalid_argument("need at least two bins to rescale");
    std::vector<std::uint8_t> px(map.codes.size());
    const double scale = 255.0 / static_cast<double>(bins - 1);
    for (std::size_t i = 0; i < map.codes.size(); ++i)
        px[i] = static_cast<std::uint8_t>(std::lround(map.codes[i] * scale));
    return GrayImage(map.width, map.height, std::move(px));
}

}  // namespace texlbp
